use std::collections::BTreeMap;

use qpu_core::logical::LogicalQubitMap;

use super::ServiceError;

/// Local to global logical addresses per client, and global logical
/// addresses to physical pairs.
///
/// Physical addresses are handed out monotonically and never reused, so
/// pairs are disjoint across all clients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressTable {
    locals: BTreeMap<(String, usize), usize>,
    owners: Vec<(String, usize)>,
    pairs: Vec<(usize, usize)>,
    physical: BTreeMap<usize, usize>,
    next_physical: usize,
    physical_limit: usize,
}

impl Default for AddressTable {
    fn default() -> Self {
        Self::with_limit(1 << 24)
    }
}

impl AddressTable {
    pub fn with_limit(physical_limit: usize) -> Self {
        Self {
            locals: BTreeMap::new(),
            owners: Vec::new(),
            pairs: Vec::new(),
            physical: BTreeMap::new(),
            next_physical: 0,
            physical_limit,
        }
    }

    pub fn global_of(&self, client: &str, local: usize) -> Option<usize> {
        self.locals.get(&(client.to_string(), local)).copied()
    }

    pub fn owner(&self, global: usize) -> Option<(&str, usize)> {
        self.owners.get(global).map(|(c, l)| (c.as_str(), *l))
    }

    pub fn pair(&self, global: usize) -> Option<(usize, usize)> {
        self.pairs.get(global).copied()
    }

    /// Global logical address owning a physical address.
    pub fn global_of_physical(&self, physical: usize) -> Option<usize> {
        self.physical.get(&physical).copied()
    }

    /// Number of global logical addresses.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn physical_allocated(&self) -> usize {
        self.next_physical
    }

    /// Resolves every local address, allocating as needed. Either all
    /// succeed or the table is left unchanged.
    pub fn resolve_all(&mut self, client: &str, locals: &[usize]) -> Result<Vec<usize>, ServiceError> {
        let fresh = locals.iter().filter(|&&l| self.global_of(client, l).is_none()).count();
        let needed = 2 * fresh;
        if self.next_physical + needed > self.physical_limit {
            return Err(ServiceError::Exhausted { needed, limit: self.physical_limit });
        }
        Ok(locals.iter().map(|&l| self.resolve(client, l)).collect())
    }

    fn resolve(&mut self, client: &str, local: usize) -> usize {
        if let Some(g) = self.global_of(client, local) {
            return g;
        }
        let global = self.pairs.len();
        let pair = (self.next_physical, self.next_physical + 1);
        self.next_physical += 2;
        self.locals.insert((client.to_string(), local), global);
        self.owners.push((client.to_string(), local));
        self.pairs.push(pair);
        self.physical.insert(pair.0, global);
        self.physical.insert(pair.1, global);
        global
    }

    /// Logical map over the given globals, keyed by global address.
    pub fn logical_map(&self, globals: &[usize]) -> LogicalQubitMap {
        let mut map = LogicalQubitMap::new();
        for &g in globals {
            let (a, b) = self.pairs[g];
            map.assign(g, a, b).expect("table pairs are disjoint");
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_is_idempotent_and_disjoint() {
        let mut t = AddressTable::default();
        let a = t.resolve_all("a", &[0]).unwrap();
        assert_eq!(t.pair(a[0]), Some((0, 1)));
        assert_eq!(t.len(), 1);
        let b = t.resolve_all("b", &[0]).unwrap();
        assert_ne!(a, b);
        assert_eq!(t.resolve_all("a", &[0]).unwrap(), a);
        assert_eq!(t.physical_allocated(), 4);
        assert_eq!(t.owner(b[0]), Some(("b", 0)));
        assert_eq!(t.global_of_physical(3), Some(b[0]));
    }

    #[test]
    fn exhaustion_leaves_table_untouched() {
        let mut t = AddressTable::with_limit(4);
        t.resolve_all("a", &[0]).unwrap();
        assert!(matches!(t.resolve_all("b", &[0, 1]), Err(ServiceError::Exhausted { .. })));
        assert_eq!(t.len(), 1);
    }
}
