//! Instrumented skip list used as the comparison baseline.
//!
//! Nodes live in an arena and link by index. Levels are drawn with
//! promotion probability 1/4 from a seeded ChaCha stream, so two lists built
//! from the same seed and operation sequence are identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::Key;

const NIL: u32 = u32::MAX;

/// Promotion probability numerator over [`P_DEN`].
const P_NUM: u32 = 1;
const P_DEN: u32 = 4;

/// Level cap: `⌈log_4(2^22)⌉`.
pub const MAX_LEVEL: usize = 11;

#[derive(Clone, Debug)]
struct Node {
    key: Key,
    next: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkipSearch {
    pub found: bool,
    pub comparisons: u32,
}

#[derive(Clone, Debug)]
pub struct SkipList {
    nodes: Vec<Node>,
    head: [u32; MAX_LEVEL],
    level: usize,
    len: usize,
    free: Vec<u32>,
    rng: ChaCha8Rng,
    comparisons: u64,
}

impl SkipList {
    pub fn new(seed: u64) -> Self {
        SkipList {
            nodes: Vec::new(),
            head: [NIL; MAX_LEVEL],
            level: 1,
            len: 0,
            free: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            comparisons: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Cumulative key comparisons made by mutating operations.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    fn next_of(&self, node: u32, lvl: usize) -> u32 {
        if node == NIL {
            self.head[lvl]
        } else {
            self.nodes[node as usize].next[lvl]
        }
    }

    fn set_next(&mut self, node: u32, lvl: usize, to: u32) {
        if node == NIL {
            self.head[lvl] = to;
        } else {
            self.nodes[node as usize].next[lvl] = to;
        }
    }

    fn random_level(&mut self) -> usize {
        let mut lvl = 1;
        while lvl < MAX_LEVEL && self.rng.gen_range(0..P_DEN) < P_NUM {
            lvl += 1;
        }
        lvl
    }

    /// Walks down from the top level, recording the last node before `key`
    /// on every level (`NIL` stands for the header).
    fn predecessors(&self, key: Key) -> ([u32; MAX_LEVEL], u32) {
        let mut update = [NIL; MAX_LEVEL];
        let mut x = NIL;
        let mut cmp = 0;
        for lvl in (0..self.level).rev() {
            loop {
                let n = self.next_of(x, lvl);
                if n == NIL {
                    break;
                }
                cmp += 1;
                if self.nodes[n as usize].key < key {
                    x = n;
                } else {
                    break;
                }
            }
            update[lvl] = x;
        }
        (update, cmp)
    }

    pub fn search(&self, key: Key) -> SkipSearch {
        let (update, mut comparisons) = self.predecessors(key);
        let n = self.next_of(update[0], 0);
        let found = n != NIL && {
            comparisons += 1;
            self.nodes[n as usize].key == key
        };
        SkipSearch { found, comparisons }
    }

    pub fn contains(&self, key: Key) -> bool {
        self.search(key).found
    }

    pub fn insert(&mut self, key: Key) -> bool {
        let (update, mut cmp) = self.predecessors(key);
        let n = self.next_of(update[0], 0);
        if n != NIL {
            cmp += 1;
            if self.nodes[n as usize].key == key {
                self.comparisons += cmp as u64;
                return false;
            }
        }
        self.comparisons += cmp as u64;
        let lvl = self.random_level();
        let mut update = update;
        if lvl > self.level {
            for u in update.iter_mut().take(lvl).skip(self.level) {
                *u = NIL;
            }
            self.level = lvl;
        }
        let node = Node { key, next: vec![NIL; lvl] };
        let id = match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        for (l, &pred) in update.iter().enumerate().take(lvl) {
            let after = self.next_of(pred, l);
            self.nodes[id as usize].next[l] = after;
            self.set_next(pred, l, id);
        }
        self.len += 1;
        true
    }

    pub fn delete(&mut self, key: Key) -> bool {
        let (update, mut cmp) = self.predecessors(key);
        let n = self.next_of(update[0], 0);
        let hit = n != NIL && {
            cmp += 1;
            self.nodes[n as usize].key == key
        };
        self.comparisons += cmp as u64;
        if !hit {
            return false;
        }
        let height = self.nodes[n as usize].next.len();
        for (l, &pred) in update.iter().enumerate().take(height) {
            let after = self.nodes[n as usize].next[l];
            self.set_next(pred, l, after);
        }
        self.nodes[n as usize].next.clear();
        self.free.push(n);
        while self.level > 1 && self.head[self.level - 1] == NIL {
            self.level -= 1;
        }
        self.len -= 1;
        true
    }

    /// Keys in ascending order.
    pub fn keys(&self) -> Vec<Key> {
        let mut out = Vec::with_capacity(self.len);
        let mut x = self.head[0];
        while x != NIL {
            out.push(self.nodes[x as usize].key);
            x = self.nodes[x as usize].next[0];
        }
        out
    }

    /// Number of nodes whose level is at least `l`, for `l` in `1..=MAX_LEVEL`.
    pub fn level_counts(&self) -> [usize; MAX_LEVEL] {
        let mut counts = [0; MAX_LEVEL];
        let mut x = self.head[0];
        while x != NIL {
            let node = &self.nodes[x as usize];
            for c in counts.iter_mut().take(node.next.len()) {
                *c += 1;
            }
            x = node.next[0];
        }
        counts
    }

    /// Forward pointers per stored key; tends to `1 / (1 - p) = 4/3`.
    pub fn mean_links(&self) -> f64 {
        if self.len == 0 {
            return 0.0;
        }
        self.level_counts().iter().sum::<usize>() as f64 / self.len as f64
    }

    /// Checks that every level is a strictly increasing subsequence of the
    /// level below.
    pub fn is_well_formed(&self) -> bool {
        let base = self.keys();
        if base.len() != self.len || base.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for l in 1..MAX_LEVEL {
            let mut x = self.head[l];
            let mut prev: Option<Key> = None;
            while x != NIL {
                let node = &self.nodes[x as usize];
                if prev.is_some_and(|p| p >= node.key) || base.binary_search(&node.key).is_err() {
                    return false;
                }
                prev = Some(node.key);
                x = node.next[l];
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let mut sl = SkipList::new(7);
        for k in [3, 5, 6, 9, 12, 20, 30, 31] {
            assert!(sl.insert(k));
        }
        assert!(!sl.insert(20));
        assert!(sl.search(20).found);
        assert!(!sl.search(7).found);
        assert_eq!(sl.keys(), vec![3, 5, 6, 9, 12, 20, 30, 31]);
        assert!(sl.delete(9));
        assert!(!sl.delete(9));
        assert!(!sl.contains(9));
        assert_eq!(sl.len(), 7);
        assert!(sl.is_well_formed());
    }

    #[test]
    fn deterministic_given_seed() {
        let build = || {
            let mut sl = SkipList::new(42);
            for k in (1..2000).map(|i| (i * 7919) % 100_003 + 1) {
                sl.insert(k);
            }
            sl.level_counts()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn empty_list() {
        let sl = SkipList::new(1);
        assert_eq!(sl.search(5), SkipSearch { found: false, comparisons: 0 });
        assert_eq!(sl.mean_links(), 0.0);
    }
}
