use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Amplitude, SimError};

/// Square matrix acting on an ordered group of subsystems.
///
/// Row and column indices are row-major over `dims`, with the first listed
/// target the most significant digit. Unitarity is not enforced on
/// construction; use [`LocalUnitary::is_unitary`].
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    dims: Vec<usize>,
    size: usize,
    entries: Vec<Amplitude>,
}

impl LocalUnitary {
    pub fn new(dims: impl Into<Vec<usize>>, entries: Vec<Amplitude>) -> Result<Self, SimError> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(SimError::EmptyShape);
        }
        if let Some((subsystem, &dim)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(SimError::InvalidDimension { subsystem, dim });
        }
        let size: usize = dims.iter().product();
        if entries.len() != size * size {
            return Err(SimError::NotSquare { entries: entries.len(), dim: size });
        }
        Ok(Self { dims, size, entries })
    }

    /// Builds the matrix from `f(row, col)`.
    pub fn from_fn(
        dims: impl Into<Vec<usize>>,
        mut f: impl FnMut(usize, usize) -> Amplitude,
    ) -> Result<Self, SimError> {
        let dims = dims.into();
        let size: usize = dims.iter().product();
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(f(r, c));
            }
        }
        Self::new(dims, entries)
    }

    pub fn identity(dims: impl Into<Vec<usize>>) -> Result<Self, SimError> {
        Self::from_fn(dims, |r, c| if r == c { Complex64::ONE } else { Complex64::ZERO })
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Side length of the matrix.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.size + col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(c, r).conj());
            }
        }
        Self { dims: self.dims.clone(), size: n, entries }
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self, SimError> {
        if self.dims != rhs.dims {
            let target = self.dims.iter().zip(&rhs.dims).position(|(a, b)| a != b).unwrap_or(0);
            return Err(SimError::DimensionMismatch {
                target,
                expected: self.dims.get(target).copied().unwrap_or(0),
                got: rhs.dims.get(target).copied().unwrap_or(0),
            });
        }
        let n = self.size;
        let mut entries = alloc::vec![Complex64::ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(Self { dims: self.dims.clone(), size: n, entries })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.size != other.size {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True iff every entry of `U^dagger U - I` has modulus at most `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = self.size;
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += self.get(k, r).conj() * self.get(k, c);
                }
                if r == c {
                    acc -= Complex64::ONE;
                }
                if !(acc.norm() <= tol) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn identity_is_unitary() {
        assert!(LocalUnitary::identity([2, 3]).unwrap().is_unitary(0.0));
    }

    #[test]
    fn scaled_row_is_not_unitary() {
        let mut u = LocalUnitary::identity([2]).unwrap();
        u.entries[0] = C::new(2.0, 0.0);
        u.entries[1] = C::new(0.0, 0.0);
        assert!(!u.is_unitary(1e-12));
    }

    #[test]
    fn nan_is_not_unitary() {
        let mut u = LocalUnitary::identity([2]).unwrap();
        u.entries[0] = C::new(f64::NAN, 0.0);
        assert!(!u.is_unitary(1e-12));
    }

    #[test]
    fn rejects_non_square() {
        assert_eq!(
            LocalUnitary::new([2], alloc::vec![C::ONE; 3]),
            Err(SimError::NotSquare { entries: 3, dim: 2 })
        );
    }

    #[test]
    fn compose_applies_rhs_first() {
        // X then Z is ZX = [[0,1],[-1,0]]
        let x = LocalUnitary::new([2], alloc::vec![C::ZERO, C::ONE, C::ONE, C::ZERO]).unwrap();
        let z = LocalUnitary::new([2], alloc::vec![C::ONE, C::ZERO, C::ZERO, -C::ONE]).unwrap();
        let zx = z.compose(&x).unwrap();
        assert_eq!(zx.entries, [C::ZERO, C::ONE, -C::ONE, C::ZERO]);
        assert_eq!(zx.adjoint().compose(&zx).unwrap(), LocalUnitary::identity([2]).unwrap());
    }
}
