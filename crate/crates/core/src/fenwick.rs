use alloc::vec;
use alloc::vec::Vec;

/// Prefix-count index over `1..=len`.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub(crate) fn new(len: usize) -> Self {
        Fenwick {
            tree: vec![0; len + 1],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub(crate) fn clear(&mut self) {
        self.tree.iter_mut().for_each(|v| *v = 0);
    }

    pub(crate) fn add(&mut self, pos: usize, delta: u64) {
        debug_assert!(pos >= 1 && pos <= self.len());
        let mut i = pos;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `1..=pos`.
    pub(crate) fn prefix(&self, pos: usize) -> u64 {
        let mut i = pos.min(self.len());
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc
    }
}
