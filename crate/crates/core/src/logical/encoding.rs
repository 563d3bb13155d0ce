use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::LogicalError;
use crate::isa::Instruction;

/// Logical id to `(first, second)` physical memory addresses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogicalQubitMap {
    pairs: BTreeMap<usize, (usize, usize)>,
}

impl LogicalQubitMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Qubit `k` on addresses `2k, 2k+1`.
    pub fn sequential(n: usize) -> Self {
        let pairs = (0..n).map(|k| (k, (2 * k, 2 * k + 1))).collect();
        Self { pairs }
    }

    pub fn assign(&mut self, id: usize, first: usize, second: usize) -> Result<(), LogicalError> {
        if first == second {
            return Err(LogicalError::DegeneratePair);
        }
        if self.pairs.contains_key(&id) {
            return Err(LogicalError::AlreadyAssigned(id));
        }
        for &(a, b) in self.pairs.values() {
            for addr in [first, second] {
                if addr == a || addr == b {
                    return Err(LogicalError::PairOverlap { addr });
                }
            }
        }
        self.pairs.insert(id, (first, second));
        Ok(())
    }

    pub fn pair(&self, id: usize) -> Result<(usize, usize), LogicalError> {
        self.pairs.get(&id).copied().ok_or(LogicalError::Unassigned(id))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.pairs.iter().map(|(&k, &v)| (k, v))
    }

    /// Smallest memory size holding every assigned address.
    pub fn memory_size(&self) -> usize {
        self.pairs.values().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0)
    }
}

/// Prepares logical qubit `id` in basis state `bit`.
pub fn encode_init(map: &LogicalQubitMap, id: usize, bit: bool) -> Result<Vec<Instruction>, LogicalError> {
    let (first, second) = map.pair(id)?;
    Ok(alloc::vec![
        Instruction::Init { addr: first, value: bit },
        Instruction::Init { addr: second, value: !bit },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_bits_follow_encoding() {
        let map = LogicalQubitMap::sequential(1);
        assert_eq!(
            encode_init(&map, 0, false).unwrap(),
            [Instruction::Init { addr: 0, value: false }, Instruction::Init { addr: 1, value: true }]
        );
        assert_eq!(
            encode_init(&map, 0, true).unwrap(),
            [Instruction::Init { addr: 0, value: true }, Instruction::Init { addr: 1, value: false }]
        );
        assert_eq!(encode_init(&map, 1, true), Err(LogicalError::Unassigned(1)));
    }

    #[test]
    fn pairs_must_be_disjoint() {
        let mut map = LogicalQubitMap::new();
        map.assign(0, 4, 7).unwrap();
        assert_eq!(map.assign(1, 7, 2), Err(LogicalError::PairOverlap { addr: 7 }));
        assert_eq!(map.assign(1, 3, 3), Err(LogicalError::DegeneratePair));
        assert_eq!(map.assign(0, 1, 2), Err(LogicalError::AlreadyAssigned(0)));
        assert_eq!(map.memory_size(), 8);
    }
}
