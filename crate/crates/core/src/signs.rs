//! Sign-pattern elimination: an unrealizability test for five observers of
//! six events.
//!
//! When the four moving velocities are linearly dependent with all-nonzero
//! coefficients `alpha_i` normalized so their sum is positive, each event
//! pair `(j,k)` rules out exactly one sign pattern of `(alpha_1..alpha_4)`:
//! the one that is negative precisely on the observers that agree with the
//! rest frame about the pair. The all-negative pattern is impossible from
//! the start, so when the `C(n,2)` pairs of some relabeling of the set
//! rule out all `2^4 - 1` remaining patterns, no fifth velocity exists and
//! the set is unrealizable in three spatial dimensions. A `false` verdict
//! is inconclusive.
//!
//! With five events there are only `C(5,2) = 10 < 15` pairs, so the test
//! never fires there; six events give exactly 15 pairs.

use thiserror::Error;

use crate::perm::{PairIndex, PermSet, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignsError {
    #[error("sign elimination applies to sets of five orderings, got {0}")]
    BadSetSize(usize),
    #[error("set must contain the identity ordering")]
    NotCanonical,
}

/// An eliminated sign pattern of the dependence coefficients: bit `i` set
/// means `alpha_{i+1} < 0` for moving observer `i+1` (members `1..=m` of
/// the sorted set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignClass {
    pub negatives: u16,
    pub m: u8,
}

impl SignClass {
    /// The all-negative pattern, already impossible because the coefficients
    /// sum to a positive number.
    pub fn is_pre_eliminated(&self) -> bool {
        self.negatives == full_mask(self.m)
    }

    /// Render as one sign per moving observer, e.g. `-++-`.
    pub fn pattern(&self) -> String {
        (0..self.m)
            .map(|i| if self.negatives >> i & 1 == 1 { '-' } else { '+' })
            .collect()
    }
}

fn full_mask(m: u8) -> u16 {
    (1u16 << m) - 1
}

/// The sign pattern eliminated by one event pair: negative exactly on the
/// moving observers that place event `j` before event `k`, like the rest
/// frame does.
pub fn pair_sign_class(q: &PermSet, pair: PairIndex) -> Result<SignClass, SignsError> {
    if q.len() != 5 {
        return Err(SignsError::BadSetSize(q.len()));
    }
    if !q.contains_identity() {
        return Err(SignsError::NotCanonical);
    }
    let m = (q.len() - 1) as u8;
    let mut negatives = 0u16;
    for (i, member) in q.members()[1..].iter().enumerate() {
        let inv = member.inverse();
        if inv.apply(pair.j) < inv.apply(pair.k) {
            negatives |= 1 << i;
        }
    }
    Ok(SignClass { negatives, m })
}

/// Patterns eliminated by all pairs of one identity-containing set, as a
/// bitmap over the `2^m` sign patterns.
fn eliminated_patterns(q: &PermSet) -> Result<u16, SignsError> {
    let mut covered = 0u16;
    for pair in PairIndex::all(q.n()) {
        covered |= 1 << pair_sign_class(q, pair)?.negatives;
    }
    Ok(covered)
}

fn covers_everything(covered: u16, m: u8) -> bool {
    let full = full_mask(m);
    let needed = (1u32 << (full as u32 + 1)) - 1 - (1 << full);
    u32::from(covered) & needed == needed
}

/// Proof-of-unrealizability verdict: true iff some relabeling of the set
/// eliminates every sign pattern except the impossible all-negative one.
/// Relabelings preserve realizability (they rename events in any witness),
/// so true proves the set unrealizable in 3+1 spacetime; false is
/// inconclusive.
pub fn sign_unrealizable(q: &PermSet) -> Result<bool, SignsError> {
    if q.len() != 5 {
        return Err(SignsError::BadSetSize(q.len()));
    }
    for t in q.relabelings() {
        if covers_everything(eliminated_patterns(&t)?, 4) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Per-pair elimination table for one relabeling of the set.
#[derive(Clone, Debug)]
pub struct EliminationTable {
    pub presentation: PermSet,
    pub rows: Vec<(PairIndex, SignClass)>,
    /// Patterns (as `negatives` masks) no pair of this presentation rules
    /// out, excluding the pre-eliminated all-negative one.
    pub missing: Vec<SignClass>,
}

/// Full diagnostic report: the verdict plus the elimination table of the
/// covering relabeling (or of the input set itself when inconclusive).
#[derive(Clone, Debug)]
pub struct SignReport {
    pub unrealizable: bool,
    pub covering_relabeling: Option<usize>,
    pub table: EliminationTable,
}

pub fn sign_report(q: &PermSet) -> Result<SignReport, SignsError> {
    if q.len() != 5 {
        return Err(SignsError::BadSetSize(q.len()));
    }
    let relabelings = q.relabelings();
    let mut chosen = None;
    for (i, t) in relabelings.iter().enumerate() {
        if covers_everything(eliminated_patterns(t)?, 4) {
            chosen = Some(i);
            break;
        }
    }
    let shown = match chosen {
        Some(i) => relabelings[i].clone(),
        None => relabelings
            .iter()
            .find(|t| **t == *q)
            .cloned()
            .unwrap_or_else(|| relabelings[0].clone()),
    };
    let rows: Vec<(PairIndex, SignClass)> = PairIndex::all(shown.n())
        .into_iter()
        .map(|p| pair_sign_class(&shown, p).map(|c| (p, c)))
        .collect::<Result<_, _>>()?;
    let covered = eliminated_patterns(&shown)?;
    let missing = (0..full_mask(4))
        .filter(|p| covered >> p & 1 == 0)
        .map(|negatives| SignClass { negatives, m: 4 })
        .collect();
    Ok(SignReport {
        unrealizable: chosen.is_some(),
        covering_relabeling: chosen,
        table: EliminationTable {
            presentation: shown,
            rows,
            missing,
        },
    })
}

/// Per-permutation pair-order bitmask: bit `p` (in the [`PairIndex::all`]
/// order) is set iff the permutation places the pair's later event first.
/// These tables drive the sweep's constant-time inner loop.
pub fn pair_order_mask(p: &Permutation) -> u16 {
    let inv = p.inverse();
    let mut mask = 0u16;
    for (bit, pair) in PairIndex::all(p.n()).into_iter().enumerate() {
        if inv.apply(pair.j) > inv.apply(pair.k) {
            mask |= 1 << bit;
        }
    }
    mask
}

/// Direct coverage check on four pair-order masks (the moving observers of
/// one identity-containing set). Used by the sweep; equivalent to testing
/// one relabeling in [`sign_unrealizable`].
pub fn masks_cover(masks: [u16; 4], n_pairs: usize) -> bool {
    let mut covered = 0u16;
    for bit in 0..n_pairs {
        // pattern eliminated by this pair: negatives where the observer
        // keeps the rest-frame order, i.e. the complement of the reversals
        let reversed = (masks[0] >> bit & 1)
            | (masks[1] >> bit & 1) << 1
            | (masks[2] >> bit & 1) << 2
            | (masks[3] >> bit & 1) << 3;
        covered |= 1 << (reversed ^ 0xF);
    }
    covers_everything(covered, 4)
}
