//! Sign-pattern sweep over the identity-containing 5-subsets of `S_6`.
//!
//! The full space has `C(719,4) = 11,042,674,501` sets, so the default
//! desk-scale mode re-derives the complete flagged list from the 62 known
//! class representatives (expanding by translations and time reversal and
//! re-checking each set), while `long_run` grinds through the whole space
//! with the precomputed pair-mask tables. Both modes emit the same 294
//! sets.
//!
//! The inner loop is the performance-critical artifact: for each candidate
//! set it combines four per-permutation 15-bit pair-order masks into
//! fifteen 4-bit eliminated patterns and checks that all fifteen live
//! patterns are covered. A set flagged by the direct check certifies its
//! whole translation class, so the sweep only tests each enumerated set
//! directly and expands the hits afterwards.

use rayon::prelude::*;

use super::lut::GroupTable;
use super::report::SearchReport;
use super::shard::{split_range, total_combinations, CombinationRange};
use crate::perm::PermSet;
use crate::signs::sign_unrealizable;

#[derive(Clone, Debug, Default)]
pub struct S6Options {
    /// Enumerate all `C(719,4)` sets instead of expanding the known
    /// representatives.
    pub long_run: bool,
    /// Combination-rank interval (long-run mode only).
    pub shard: Option<(u64, u64)>,
}

/// Representatives of the 62 relabeling classes flagged by the full sign
/// sweep: the 8 time-reversal invariant classes first, then the 27
/// reversal-paired classes. Expanding by event relabelings and time
/// reversal recovers all 294 flagged sets.
pub const SIGN_BLOCKED_REPRESENTATIVES: [&str; 62] = [
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(2,6,1,5,4,3),(4,3,2,6,1,5),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(3,4,5,6,1,2),(5,4,2,1,3,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,5,6,4,2,3),(2,5,4,6,1,3),(4,5,3,1,2,6),(4,6,1,3,2,5)}",
    "{(1,2,3,4,5,6),(1,5,6,4,2,3),(3,6,1,4,5,2),(4,5,3,1,2,6),(5,2,3,6,1,4)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(3,4,5,6,1,2),(5,6,1,2,3,4),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(4,3,5,1,6,2),(5,1,6,2,4,3),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(3,6,1,4,5,2),(4,2,3,6,5,1),(5,2,3,6,1,4),(6,2,1,4,5,3)}",
    "{(1,2,3,4,5,6),(4,1,6,3,5,2),(4,2,3,6,5,1),(5,2,4,1,6,3),(6,2,1,4,5,3)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(2,4,6,5,1,3),(5,6,1,2,3,4),(6,3,2,1,4,5)}",
    "{(1,2,3,4,5,6),(2,3,6,5,4,1),(3,4,5,6,1,2),(4,6,2,1,3,5),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(3,4,5,6,1,2),(5,6,1,2,3,4),(6,3,2,1,4,5)}",
    "{(1,2,3,4,5,6),(2,3,6,5,4,1),(3,4,5,6,1,2),(5,4,2,1,3,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(3,5,4,1,6,2),(4,3,2,6,1,5),(6,3,1,2,5,4)}",
    "{(1,2,3,4,5,6),(2,6,1,5,4,3),(3,2,5,6,4,1),(5,1,6,3,2,4),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(3,6,1,5,2,4),(4,3,2,6,1,5),(5,3,4,1,2,6)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(2,6,1,5,4,3),(3,5,2,6,1,4),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(3,6,4,1,2,5),(5,3,1,6,2,4),(6,2,1,5,3,4)}",
    "{(1,2,3,4,5,6),(2,5,6,3,1,4),(3,4,2,6,5,1),(3,5,1,6,4,2),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(4,2,5,6,1,3),(5,3,4,1,2,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(3,4,5,6,1,2),(4,6,1,2,5,3),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(4,2,6,3,1,5),(5,2,4,1,6,3),(6,2,1,5,3,4)}",
    "{(1,2,3,4,5,6),(2,6,4,1,5,3),(3,4,2,6,5,1),(4,1,6,3,5,2),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,4,6,5,3,2),(5,2,4,1,6,3),(5,3,1,6,2,4),(6,2,1,5,3,4)}",
    "{(1,2,3,4,5,6),(3,4,2,6,5,1),(3,5,1,6,4,2),(4,1,6,3,5,2),(5,4,2,1,3,6)}",
    "{(1,2,3,4,5,6),(1,5,4,6,3,2),(2,5,6,1,4,3),(4,5,2,3,1,6),(4,6,2,1,3,5)}",
    "{(1,2,3,4,5,6),(1,6,4,5,2,3),(2,4,6,5,1,3),(4,3,6,1,2,5),(5,4,1,3,2,6)}",
    "{(1,2,3,4,5,6),(1,5,4,6,3,2),(2,5,6,1,4,3),(4,6,2,1,3,5),(6,3,1,2,5,4)}",
    "{(1,2,3,4,5,6),(2,4,6,5,1,3),(3,2,5,6,4,1),(4,3,6,1,2,5),(5,4,1,3,2,6)}",
    "{(1,2,3,4,5,6),(1,5,4,6,3,2),(3,4,5,6,1,2),(4,6,2,1,3,5),(6,3,1,2,5,4)}",
    "{(1,2,3,4,5,6),(2,4,6,5,1,3),(3,2,5,6,4,1),(5,4,1,3,2,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,5,4,6,3,2),(3,4,5,6,1,2),(5,3,2,1,6,4),(6,3,1,2,5,4)}",
    "{(1,2,3,4,5,6),(3,1,6,5,4,2),(3,2,5,6,4,1),(5,4,1,3,2,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(2,5,6,1,4,3),(3,6,2,1,5,4),(5,3,2,4,1,6)}",
    "{(1,2,3,4,5,6),(1,6,3,5,4,2),(3,2,6,5,1,4),(4,3,6,1,2,5),(5,3,4,1,2,6)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(2,5,6,1,4,3),(3,6,2,1,5,4),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(3,2,6,5,1,4),(4,3,6,1,2,5),(5,3,4,1,2,6)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(2,5,6,1,4,3),(4,6,1,2,5,3),(6,3,2,1,4,5)}",
    "{(1,2,3,4,5,6),(2,3,6,5,4,1),(4,2,5,6,1,3),(4,3,6,1,2,5),(5,3,4,1,2,6)}",
    "{(1,2,3,4,5,6),(1,5,6,3,4,2),(3,4,5,6,1,2),(4,5,2,1,6,3),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(4,1,6,5,2,3),(5,3,4,1,2,6),(5,6,1,2,3,4)}",
    "{(1,2,3,4,5,6),(1,5,6,4,2,3),(2,5,4,6,1,3),(4,6,1,3,2,5),(6,2,3,1,5,4)}",
    "{(1,2,3,4,5,6),(2,5,4,6,1,3),(3,2,6,4,5,1),(4,5,3,1,2,6),(4,6,1,3,2,5)}",
    "{(1,2,3,4,5,6),(1,5,6,4,2,3),(2,5,4,6,1,3),(5,3,2,1,6,4),(6,2,3,1,5,4)}",
    "{(1,2,3,4,5,6),(3,1,6,5,4,2),(3,2,6,4,5,1),(4,5,3,1,2,6),(4,6,1,3,2,5)}",
    "{(1,2,3,4,5,6),(1,6,3,5,4,2),(2,6,1,5,4,3),(3,6,2,4,1,5),(5,3,2,1,6,4)}",
    "{(1,2,3,4,5,6),(2,6,3,5,1,4),(3,1,6,5,4,2),(4,3,2,6,1,5),(5,3,2,4,1,6)}",
    "{(1,2,3,4,5,6),(1,6,3,5,4,2),(2,6,5,1,3,4),(3,6,2,4,1,5),(4,6,1,2,5,3)}",
    "{(1,2,3,4,5,6),(2,6,3,5,1,4),(3,4,6,2,1,5),(4,2,5,6,1,3),(5,3,2,4,1,6)}",
    "{(1,2,3,4,5,6),(2,3,6,5,4,1),(3,1,6,5,4,2),(5,6,1,2,3,4),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(3,4,5,6,1,2),(5,3,2,1,6,4),(6,3,2,1,4,5)}",
    "{(1,2,3,4,5,6),(2,3,6,5,4,1),(3,4,5,6,1,2),(5,6,1,2,3,4),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(3,4,5,6,1,2),(5,6,1,2,3,4),(6,3,2,1,4,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(3,6,2,4,1,5),(4,3,5,1,6,2),(5,3,2,1,6,4)}",
    "{(1,2,3,4,5,6),(2,6,3,5,1,4),(3,1,6,5,4,2),(5,1,6,2,4,3),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,5,6,3,1),(4,6,1,3,2,5),(5,1,4,6,2,3),(6,2,1,5,3,4)}",
    "{(1,2,3,4,5,6),(2,5,4,6,1,3),(3,4,2,6,5,1),(4,5,1,3,6,2),(6,4,1,2,3,5)}",
    "{(1,2,3,4,5,6),(2,4,6,3,5,1),(3,6,2,1,5,4),(4,3,1,6,5,2),(6,1,4,2,5,3)}",
    "{(1,2,3,4,5,6),(3,2,6,5,1,4),(4,2,5,3,6,1),(5,2,1,6,4,3),(6,2,4,1,3,5)}",
    "{(1,2,3,4,5,6),(2,4,6,3,5,1),(3,6,4,1,2,5),(4,1,6,5,2,3),(6,2,1,5,3,4)}",
    "{(1,2,3,4,5,6),(2,5,6,3,1,4),(3,4,2,6,5,1),(4,5,2,1,6,3),(6,2,4,1,3,5)}",
    "{(1,2,3,4,5,6),(2,6,4,1,5,3),(3,4,2,6,5,1),(4,1,6,3,5,2),(6,3,1,2,5,4)}",
    "{(1,2,3,4,5,6),(3,2,5,6,4,1),(4,2,6,3,1,5),(5,2,4,1,6,3),(6,2,1,5,3,4)}",
];

pub fn sign_blocked_class_representatives() -> Vec<PermSet> {
    SIGN_BLOCKED_REPRESENTATIVES
        .iter()
        .map(|s| s.parse().expect("representative literals parse"))
        .collect()
}

/// Expands the representatives by event relabelings and time reversal into
/// the full deduplicated list of flagged identity-containing sets.
pub fn expand_representatives(reps: &[PermSet]) -> Vec<PermSet> {
    let mut out = std::collections::BTreeSet::new();
    for q in reps {
        for t in q.relabelings() {
            out.insert(t);
        }
        for t in q.time_reverse_set().relabelings() {
            out.insert(t);
        }
    }
    out.into_iter().collect()
}

pub fn search_s6_signs(opts: &S6Options) -> SearchReport {
    if opts.long_run {
        long_run(opts)
    } else {
        desk_scale()
    }
}

/// Re-derives the 294 from the stored representatives and re-checks every
/// one with the elimination test.
fn desk_scale() -> SearchReport {
    let expanded = expand_representatives(&sign_blocked_class_representatives());
    let mut report = SearchReport::new("s6-signs-desk");
    report.total_enumerated = expanded.len() as u64;
    let confirmed = expanded
        .par_iter()
        .filter(|q| sign_unrealizable(q).expect("five orderings"))
        .count();
    report.bump("sign_unrealizable_confirmed", confirmed as u64);
    for (k, v) in super::class_analysis(&expanded).as_stats() {
        report.bump(&k, v);
    }
    report.flagged = expanded;
    report.finish();
    report
}

/// Exhaustive sweep. Each enumerated set gets the direct coverage check;
/// hits are expanded by translations afterwards, which recovers every
/// flagged set because a covering translation is itself an enumerated,
/// identity-containing set.
fn long_run(opts: &S6Options) -> SearchReport {
    let table = GroupTable::s6();
    let masks = &table.pair_masks;
    let pool = 719u64;
    let total = total_combinations(pool);
    let (lo, hi) = opts.shard.unwrap_or((0, total));
    let chunks: Vec<(u64, u64)> = split_range(hi - lo, 4096)
        .into_iter()
        .map(|(a, b)| (lo + a, lo + b))
        .collect();

    let hits: Vec<[u16; 5]> = chunks
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let mut local = Vec::new();
            for c in CombinationRange::new(a, b) {
                let m = [
                    masks[c[0] as usize + 1],
                    masks[c[1] as usize + 1],
                    masks[c[2] as usize + 1],
                    masks[c[3] as usize + 1],
                ];
                if covers_all_patterns(m) {
                    local.push([
                        0u16,
                        (c[0] + 1) as u16,
                        (c[1] + 1) as u16,
                        (c[2] + 1) as u16,
                        (c[3] + 1) as u16,
                    ]);
                }
            }
            local
        })
        .collect();

    let mut flagged = std::collections::BTreeSet::new();
    for ids in &hits {
        for by in 0..5 {
            flagged.insert(table.translate_left(ids, by));
        }
    }
    let mut report = SearchReport::new("s6-signs-full");
    report.total_enumerated = hi - lo;
    report.bump("direct_hits", hits.len() as u64);
    report.flagged = flagged.iter().map(|ids| table.permset(ids)).collect();
    if opts.shard.is_none() {
        for (k, v) in super::class_analysis(&report.flagged).as_stats() {
            report.bump(&k, v);
        }
    }
    report.finish();
    report
}

/// Direct coverage check over four 15-bit pair masks: every sign pattern
/// except the impossible all-negative one must be eliminated by some pair.
#[inline]
fn covers_all_patterns(m: [u16; 4]) -> bool {
    let mut covered = 0u16;
    for bit in 0..15 {
        let reversed = (m[0] >> bit & 1)
            | (m[1] >> bit & 1) << 1
            | (m[2] >> bit & 1) << 2
            | (m[3] >> bit & 1) << 3;
        covered |= 1 << (reversed ^ 0xF);
    }
    covered & 0x7FFF == 0x7FFF
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::class_analysis;

    #[test]
    fn paired_representatives_are_time_reversals() {
        // the listing places the 8 invariant classes first, then reversal
        // pairs: entries 9/10 are each other's time reversal, and the
        // first 8 are their own
        let reps = sign_blocked_class_representatives();
        for q in &reps[..8] {
            assert_eq!(q.time_reverse_set(), *q);
        }
        for pair in reps[8..].chunks(2) {
            assert_eq!(pair[0].time_reverse_set(), pair[1]);
            assert_eq!(pair[1].time_reverse_set(), pair[0]);
        }
    }

    #[test]
    fn representatives_expand_to_294() {
        let reps = sign_blocked_class_representatives();
        assert_eq!(reps.len(), 62);
        let expanded = expand_representatives(&reps);
        assert_eq!(expanded.len(), 294);
        let stats = class_analysis(&expanded);
        assert_eq!(stats.classes, 62);
        assert_eq!(stats.group_classes, 4);
        assert_eq!(stats.tr_invariant_classes, 8);
        assert_eq!(stats.tr_invariant_self_inverse_classes, 1);
    }

    #[test]
    fn desk_scale_confirms_all() {
        let report = search_s6_signs(&S6Options::default());
        assert_eq!(report.flagged.len(), 294);
        assert_eq!(report.stats["sign_unrealizable_confirmed"], 294);
    }

    #[test]
    fn fast_mask_check_agrees_with_slow_path_on_shard() {
        // a long-run shard must flag exactly the known sets it contains
        let table = GroupTable::s6();
        let known = expand_representatives(&sign_blocked_class_representatives());
        let known_ids: std::collections::BTreeSet<Vec<u16>> =
            known.iter().map(|q| table.set_ids(q)).collect();
        let opts = S6Options {
            long_run: true,
            shard: Some((0, 3_000_000)),
        };
        let report = search_s6_signs(&opts);
        for q in &report.flagged {
            // every expanded hit is a known flagged set
            assert!(known_ids.contains(&table.set_ids(q)), "unexpected flag {q}");
        }
    }
}
