//! Enumeration harnesses: the full `S_5` realizability sweep, the `S_6`
//! sign-pattern sweep, the cyclic-set extension generator, and relabeling
//! class analysis. Sweeps are map-reduce over combination-rank shards;
//! workers share only the immutable group tables and every merge is
//! order-independent, so reports are byte-identical across worker counts.

mod fastver;
mod lut;
mod report;
mod s5;
mod s6;
mod shard;

pub use lut::GroupTable;
pub use report::{read_report, write_report, ReportError, SearchReport};
pub use s5::{search_s5, S5Options};
pub use s6::{
    expand_representatives, search_s6_signs, sign_blocked_class_representatives, S6Options,
};
pub use shard::{rank4, split_range, total_combinations, unrank4, CombinationRange};

use std::collections::BTreeMap;

use crate::perm::PermSet;

/// Relabeling-class decomposition of a list of identity-containing sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassStats {
    pub sets: usize,
    pub classes: usize,
    pub group_classes: usize,
    pub tr_invariant_classes: usize,
    /// Time-reversal invariant classes containing a set equal to its own
    /// member-wise inverse.
    pub tr_invariant_self_inverse_classes: usize,
    pub self_inverse_sets: usize,
    /// Classes that must be examined once time reversal is quotiented out:
    /// the invariant ones plus half the rest.
    pub cases_to_consider: usize,
}

impl ClassStats {
    pub fn as_stats(&self) -> BTreeMap<String, u64> {
        let mut m = BTreeMap::new();
        m.insert("sets".into(), self.sets as u64);
        m.insert("classes".into(), self.classes as u64);
        m.insert("group_classes".into(), self.group_classes as u64);
        m.insert(
            "tr_invariant_classes".into(),
            self.tr_invariant_classes as u64,
        );
        m.insert(
            "tr_invariant_self_inverse_classes".into(),
            self.tr_invariant_self_inverse_classes as u64,
        );
        m.insert("self_inverse_sets".into(), self.self_inverse_sets as u64);
        m.insert("cases_to_consider".into(), self.cases_to_consider as u64);
        m
    }
}

/// Partitions the sets into relabeling classes, counts the order-5
/// subgroups, pairs classes under time reversal, and counts self-inverse
/// sets.
pub fn class_analysis(sets: &[PermSet]) -> ClassStats {
    let mut classes: BTreeMap<PermSet, Vec<&PermSet>> = BTreeMap::new();
    for s in sets {
        classes.entry(s.canonicalize_relabeling()).or_default().push(s);
    }
    let mut stats = ClassStats {
        sets: sets.len(),
        classes: classes.len(),
        ..ClassStats::default()
    };
    for (rep, members) in &classes {
        if rep.is_cyclic_group() {
            stats.group_classes += 1;
        }
        let tr_invariant = rep.time_reverse_set().canonicalize_relabeling() == *rep;
        if tr_invariant {
            stats.tr_invariant_classes += 1;
            if rep
                .relabelings()
                .iter()
                .any(|t| t.inverse_set() == *t)
            {
                stats.tr_invariant_self_inverse_classes += 1;
            }
        }
        stats.self_inverse_sets += members
            .iter()
            .filter(|s| s.inverse_set() == ***s)
            .count();
    }
    stats.cases_to_consider =
        stats.tr_invariant_classes + (stats.classes - stats.tr_invariant_classes) / 2;
    stats
}

/// Extends the unrealizable cyclic set of five events by a sixth event in
/// every possible observed position (`6^5` insertions of the new label
/// into the members' observation sequences), standardizes via all five
/// relabelings, and deduplicates. Every resulting set inherits
/// unrealizability: deleting the inserted event recovers the cyclic set.
pub fn q0_extension_sets() -> (SearchReport, Vec<PermSet>) {
    let t6 = GroupTable::s6();
    let cyclic: PermSet = "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
        .parse()
        .expect("literal set");
    let base: Vec<&[u8]> = cyclic.members().iter().map(|m| m.one_line()).collect();

    // member ids for every (member, insert position) choice: the new event,
    // labeled 6, lands at position `pos` of the observation sequence
    let mut inserted = [[0u16; 6]; 5];
    for (mi, member) in base.iter().enumerate() {
        for pos in 1..=6usize {
            let mut arr: Vec<u8> = member.to_vec();
            arr.insert(pos - 1, 6);
            inserted[mi][pos - 1] =
                t6.rank_of_array(&arr).expect("insertion yields a permutation");
        }
    }

    let mut raw = 0u64;
    let mut dedup = std::collections::BTreeSet::new();
    let mut choice = [0usize; 5];
    loop {
        let set = [
            inserted[0][choice[0]],
            inserted[1][choice[1]],
            inserted[2][choice[2]],
            inserted[3][choice[3]],
            inserted[4][choice[4]],
        ];
        for by in 0..5 {
            raw += 1;
            dedup.insert(t6.translate_left(&set, by));
        }
        // odometer over the 6^5 insertion choices
        let mut i = 0;
        loop {
            if i == 5 {
                break;
            }
            choice[i] += 1;
            if choice[i] < 6 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == 5 {
            break;
        }
    }

    let sets: Vec<PermSet> = dedup.iter().map(|ids| t6.permset(ids)).collect();
    let mut report = SearchReport::new("q0-extend");
    report.total_enumerated = raw;
    report.bump("raw_translations", raw);
    report.bump("deduplicated", sets.len() as u64);
    for (k, v) in class_analysis(&sets).as_stats() {
        report.bump(&k, v);
    }
    report.flagged = sets.clone();
    report.finish();
    (report, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_extension_counts() {
        let (report, sets) = q0_extension_sets();
        assert_eq!(report.total_enumerated, 38_880);
        assert_eq!(sets.len(), 7676);
        assert_eq!(report.stats["deduplicated"], 7676);
        assert_eq!(report.stats["classes"], 1540);
        assert_eq!(report.stats["group_classes"], 6);
        assert_eq!(report.stats["tr_invariant_classes"], 6);
        assert_eq!(report.stats["cases_to_consider"], 773);
        assert!(sets.iter().all(PermSet::contains_identity));
    }

    #[test]
    fn class_analysis_of_cyclic_set() {
        let q0: PermSet = "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
            .parse()
            .unwrap();
        let stats = class_analysis(&[q0]);
        assert_eq!(stats.classes, 1);
        assert_eq!(stats.group_classes, 1);
        assert_eq!(stats.tr_invariant_classes, 1);
        assert_eq!(stats.tr_invariant_self_inverse_classes, 1);
        assert_eq!(stats.self_inverse_sets, 1);
    }
}
