//! Dense lookup tables for one symmetric group: permutations in
//! lexicographic rank order (rank 0 is the identity), multiplication and
//! inverse tables, and per-permutation pair-order bitmasks. These are the
//! immutable shared state of every sweep worker.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::perm::{all_permutations, PermSet, Permutation};
use crate::signs::pair_order_mask;

pub struct GroupTable {
    pub n: usize,
    pub size: usize,
    arrays: Vec<Vec<u8>>,
    rank_of: HashMap<Vec<u8>, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    pub pair_masks: Vec<u16>,
}

impl GroupTable {
    fn build(n: usize) -> GroupTable {
        let perms = all_permutations(n);
        let size = perms.len();
        let arrays: Vec<Vec<u8>> = perms.iter().map(|p| p.one_line().to_vec()).collect();
        let rank_of: HashMap<Vec<u8>, u16> = arrays
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i as u16))
            .collect();
        let mut mul = vec![0u16; size * size];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let c = pa.compose(pb).expect("same n");
                mul[a * size + b] = rank_of[c.one_line()];
            }
        }
        let inv = perms
            .iter()
            .map(|p| rank_of[p.inverse().one_line()])
            .collect();
        let pair_masks = perms.iter().map(pair_order_mask).collect();
        GroupTable {
            n,
            size,
            arrays,
            rank_of,
            mul,
            inv,
            pair_masks,
        }
    }

    pub fn s5() -> &'static GroupTable {
        static S5: OnceLock<GroupTable> = OnceLock::new();
        S5.get_or_init(|| GroupTable::build(5))
    }

    pub fn s6() -> &'static GroupTable {
        static S6: OnceLock<GroupTable> = OnceLock::new();
        S6.get_or_init(|| GroupTable::build(6))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn one_line(&self, r: u16) -> &[u8] {
        &self.arrays[r as usize]
    }

    pub fn rank(&self, p: &Permutation) -> u16 {
        self.rank_of[p.one_line()]
    }

    pub fn rank_of_array(&self, a: &[u8]) -> Option<u16> {
        self.rank_of.get(a).copied()
    }

    pub fn permutation(&self, r: u16) -> Permutation {
        Permutation::from_one_line(self.arrays[r as usize].clone()).expect("table entry")
    }

    pub fn permset(&self, ids: &[u16]) -> PermSet {
        PermSet::new(ids.iter().map(|&r| self.permutation(r)).collect()).expect("distinct ids")
    }

    pub fn set_ids(&self, q: &PermSet) -> Vec<u16> {
        q.members().iter().map(|m| self.rank(m)).collect()
    }

    /// Right-translation of a sorted id set by the inverse of its `by`-th
    /// member; result sorted. Rank order equals lexicographic order on
    /// one-line arrays, so sorting ids sorts the set.
    pub fn translate<const K: usize>(&self, set: &[u16; K], by: usize) -> [u16; K] {
        let inv = self.inv(set[by]);
        let mut out = [0u16; K];
        for (o, &s) in out.iter_mut().zip(set.iter()) {
            *o = self.mul(s, inv);
        }
        out.sort_unstable();
        out
    }

    /// Left-translation (event relabeling) by the inverse of the `by`-th
    /// member; result sorted and identity-containing.
    pub fn translate_left<const K: usize>(&self, set: &[u16; K], by: usize) -> [u16; K] {
        let inv = self.inv(set[by]);
        let mut out = [0u16; K];
        for (o, &s) in out.iter_mut().zip(set.iter()) {
            *o = self.mul(inv, s);
        }
        out.sort_unstable();
        out
    }

    /// Lexicographically least right-translation.
    pub fn canonical<const K: usize>(&self, set: &[u16; K]) -> [u16; K] {
        let mut best = self.translate(set, 0);
        for by in 1..K {
            let t = self.translate(set, by);
            if t < best {
                best = t;
            }
        }
        best
    }

    /// Lexicographically least relabeling.
    pub fn canonical_left<const K: usize>(&self, set: &[u16; K]) -> [u16; K] {
        let mut best = self.translate_left(set, 0);
        for by in 1..K {
            let t = self.translate_left(set, by);
            if t < best {
                best = t;
            }
        }
        best
    }
}
