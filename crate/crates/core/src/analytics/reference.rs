use std::cell::Cell;

use crate::lattice::Key;

/// Sorted vector of distinct keys used as membership ground truth.
#[derive(Clone, Debug, Default)]
pub struct ReferenceSet {
    keys: Vec<Key>,
    comparisons: Cell<u64>,
}

impl ReferenceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: impl IntoIterator<Item = Key>) -> Self {
        let mut keys: Vec<Key> = keys.into_iter().collect();
        keys.sort_unstable();
        keys.dedup();
        ReferenceSet { keys, comparisons: Cell::new(0) }
    }

    fn find(&self, key: Key) -> Result<usize, usize> {
        let mut n = 0;
        let r = self.keys.binary_search_by(|probe| {
            n += 1;
            probe.cmp(&key)
        });
        self.comparisons.set(self.comparisons.get() + n);
        r
    }

    pub fn contains(&self, key: Key) -> bool {
        self.find(key).is_ok()
    }

    pub fn insert(&mut self, key: Key) -> bool {
        match self.find(key) {
            Ok(_) => false,
            Err(i) => {
                self.keys.insert(i, key);
                true
            }
        }
    }

    pub fn delete(&mut self, key: Key) -> bool {
        match self.find(key) {
            Ok(i) => {
                self.keys.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn as_slice(&self) -> &[Key] {
        &self.keys
    }

    /// The `i`-th smallest key.
    pub fn nth(&self, i: usize) -> Option<Key> {
        self.keys.get(i).copied()
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }
}

impl PartialEq for ReferenceSet {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys
    }
}
