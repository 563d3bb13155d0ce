use alloc::vec::Vec;

use super::SimError;

/// Ordered per-subsystem dimensions of a composite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self, SimError> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(SimError::EmptyShape);
        }
        if let Some((subsystem, &dim)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(SimError::InvalidDimension { subsystem, dim });
        }
        Ok(Self { dims })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self, SimError> {
        Self::new(alloc::vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of the full composite space.
    pub fn dimension(&self) -> usize {
        self.dims.iter().product()
    }

    /// Index step of each subsystem's level in the row-major layout.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = alloc::vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn index_of(&self, levels: &[usize]) -> Result<usize, SimError> {
        if levels.len() != self.dims.len() {
            return Err(SimError::LevelCount { expected: self.dims.len(), got: levels.len() });
        }
        let mut index = 0;
        for (subsystem, (&level, &dim)) in levels.iter().zip(&self.dims).enumerate() {
            if level >= dim {
                return Err(SimError::LevelOutOfRange { subsystem, level, dim });
            }
            index = index * dim + level;
        }
        Ok(index)
    }

    pub fn levels_of(&self, mut index: usize) -> Vec<usize> {
        let mut levels = alloc::vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            levels[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        levels
    }

    /// Level of subsystem `target` within basis index `index`.
    pub fn level_at(&self, index: usize, target: usize) -> usize {
        let stride: usize = self.dims[target + 1..].iter().product();
        (index / stride) % self.dims[target]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial_subsystems() {
        assert_eq!(
            SubsystemShape::new([2, 1, 3]),
            Err(SimError::InvalidDimension { subsystem: 1, dim: 1 })
        );
        assert_eq!(SubsystemShape::new(Vec::new()), Err(SimError::EmptyShape));
    }

    #[test]
    fn row_major_first_subsystem_most_significant() {
        let shape = SubsystemShape::new([2, 4, 3]).unwrap();
        assert_eq!(shape.strides(), [12, 3, 1]);
        assert_eq!(shape.index_of(&[1, 2, 0]).unwrap(), 18);
        assert_eq!(shape.levels_of(18), [1, 2, 0]);
        assert_eq!(shape.level_at(18, 1), 2);
        for index in 0..shape.dimension() {
            assert_eq!(shape.index_of(&shape.levels_of(index)).unwrap(), index);
        }
    }
}
