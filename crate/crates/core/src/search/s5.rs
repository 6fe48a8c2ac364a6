//! Full realizability sweep over the identity-containing 5-subsets of
//! `S_5`: `C(119,4) = 7,940,751` sets, or the 1,588,155 canonical class
//! representatives in class mode.
//!
//! The schedule stages narrow the unresolved sets: the first (linear
//! slopes 1,300,200,300) leaves 333, of which 160 are singular in all
//! twenty systems and 173 always give all-negative relations; the two
//! tabulated refinements leave only the cyclic group. Schedule values stay
//! in the low thousands, so the whole decide-and-verify pipeline runs on
//! machine integers, with the rational realizer path kept as a sampled
//! cross-check on the witnesses.

use rayon::prelude::*;

use super::fastver::{
    build_int_system, int_feasible, int_witness_velocity, int_verify, stage_in_bounds,
};
use super::lut::GroupTable;
use super::report::SearchReport;
use super::shard::{split_range, total_combinations, CombinationRange};
use crate::realizer::{
    build_gap_system, builtin_schedule_tables, builtin_schedules, fm_feasible,
    witness_from_system, Schedule,
};
use crate::spacetime::verify_witness;

#[derive(Clone, Debug)]
pub struct S5Options {
    /// Enumerate only canonical class representatives.
    pub class_mode: bool,
    /// Combination-rank interval to process; `None` means everything.
    pub shard: Option<(u64, u64)>,
    /// Build and verify a witness for every realized set (integer path,
    /// with a sampled full rational cross-check).
    pub verify_witnesses: bool,
    /// Stop after this many schedule stages (`None`: the full built-in list).
    pub stage_limit: Option<usize>,
}

impl Default for S5Options {
    fn default() -> Self {
        S5Options {
            class_mode: false,
            shard: None,
            verify_witnesses: true,
            stage_limit: None,
        }
    }
}

/// Every this many realized sets, one witness is rebuilt on the rational
/// path and checked with the spacetime verifier.
const RATIONAL_CROSS_CHECK_INTERVAL: u64 = 65_536;

type Stage = [Vec<i64>; 4];

struct Sweep {
    table: &'static GroupTable,
    stages: Vec<Stage>,
    schedules: Vec<Schedule>,
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StageOutcome {
    Feasible { translation: u8, solved: u8 },
    AllSingular,
    Unresolved,
}

impl Sweep {
    /// One stage's verdict for one set. Singular attempts are skipped, not
    /// decided: the staged narrowing (333 unresolved, then 3, then 1) is a
    /// property of the alpha/beta relation alone, and every set with only
    /// singular feasible systems at one stage is realized nonsingularly by
    /// a later stage anyway.
    fn stage_outcome(&self, set: &[u16; 5], stage: &Stage) -> StageOutcome {
        let t = self.table;
        let mut saw_nonsingular = false;
        for translation in 0..5u8 {
            let ids = t.translate_left(set, translation as usize);
            for solved in 0..4u8 {
                let sys = build_int_system(t, &ids[1..], solved as usize, stage);
                match int_feasible(&sys) {
                    None => {}
                    Some(true) => {
                        return StageOutcome::Feasible { translation, solved };
                    }
                    Some(false) => saw_nonsingular = true,
                }
            }
        }
        if saw_nonsingular {
            StageOutcome::Unresolved
        } else {
            StageOutcome::AllSingular
        }
    }

    /// Integer witness verification for a feasible attempt; falls into the
    /// rational path when the attempt was realized through the singular
    /// fallback.
    fn verify_integer(&self, set: &[u16; 5], stage_idx: usize, outcome: StageOutcome) -> bool {
        let StageOutcome::Feasible { translation, solved } = outcome else {
            return false;
        };
        let t = self.table;
        let stage = &self.stages[stage_idx];
        let ids = t.translate_left(set, translation as usize);
        let sys = build_int_system(t, &ids[1..], solved as usize, stage);
        match int_witness_velocity(&sys) {
            Some((nu, du)) => int_verify(t, &ids[1..], solved as usize, stage, &sys, nu, du),
            None => self.rebuild_and_verify_rational(set, stage_idx, outcome),
        }
    }

    /// Full rational reconstruction through the realizer and the spacetime
    /// verifier.
    fn rebuild_and_verify_rational(
        &self,
        set: &[u16; 5],
        stage_idx: usize,
        outcome: StageOutcome,
    ) -> bool {
        let StageOutcome::Feasible { translation, solved } = outcome else {
            return false;
        };
        let ids = self.table.translate_left(set, translation as usize);
        let q = self.table.permset(&ids);
        let (sys, events) = build_gap_system(&q, &self.schedules[stage_idx], solved as usize)
            .expect("sweep sets satisfy the gap-system preconditions");
        let Some(u) = fm_feasible(&sys) else {
            panic!("integer pass found a feasible system that elimination rejects");
        };
        let w = witness_from_system(&q, &events, solved as usize, u);
        verify_witness(&w)
    }
}

struct ChunkResult {
    processed: u64,
    realized: u64,
    verified: u64,
    cross_checked: u64,
    stage_realized: Vec<u64>,
    stage1_singular: u64,
    stage1_allneg: u64,
    final_unresolved: Vec<[u16; 5]>,
}

pub fn search_s5(opts: &S5Options) -> SearchReport {
    let table = GroupTable::s5();
    let stages = builtin_schedule_tables(5);
    assert!(stages.iter().all(stage_in_bounds));
    let schedules = builtin_schedules(5);
    let stage_count = opts
        .stage_limit
        .unwrap_or(stages.len())
        .clamp(1, stages.len());
    let sweep = Sweep {
        table,
        stages: stages[..stage_count].to_vec(),
        schedules: schedules[..stage_count].to_vec(),
        verify: opts.verify_witnesses,
    };

    let pool = 119u64; // non-identity elements of S_5
    let total = total_combinations(pool);
    let (lo, hi) = opts.shard.unwrap_or((0, total));
    let chunks = split_range(hi - lo, 256)
        .into_iter()
        .map(|(a, b)| (lo + a, lo + b))
        .collect::<Vec<_>>();

    let results: Vec<ChunkResult> = chunks
        .par_iter()
        .map(|&(a, b)| {
            let mut r = ChunkResult {
                processed: 0,
                realized: 0,
                verified: 0,
                cross_checked: 0,
                stage_realized: vec![0; stage_count],
                stage1_singular: 0,
                stage1_allneg: 0,
                final_unresolved: Vec::new(),
            };
            for c in CombinationRange::new(a, b) {
                let set = [
                    0u16,
                    (c[0] + 1) as u16,
                    (c[1] + 1) as u16,
                    (c[2] + 1) as u16,
                    (c[3] + 1) as u16,
                ];
                if opts.class_mode && sweep.table.canonical_left(&set) != set {
                    continue;
                }
                r.processed += 1;
                let mut resolved = false;
                for (si, stage) in sweep.stages.iter().enumerate() {
                    let outcome = sweep.stage_outcome(&set, stage);
                    match outcome {
                        StageOutcome::Feasible { .. } => {
                            r.realized += 1;
                            r.stage_realized[si] += 1;
                            if sweep.verify {
                                assert!(
                                    sweep.verify_integer(&set, si, outcome),
                                    "realized set failed witness verification"
                                );
                                r.verified += 1;
                                if r.realized.is_multiple_of(RATIONAL_CROSS_CHECK_INTERVAL) {
                                    assert!(
                                        sweep.rebuild_and_verify_rational(&set, si, outcome),
                                        "rational cross-check failed"
                                    );
                                    r.cross_checked += 1;
                                }
                            }
                            resolved = true;
                            break;
                        }
                        StageOutcome::AllSingular if si == 0 => r.stage1_singular += 1,
                        StageOutcome::Unresolved if si == 0 => r.stage1_allneg += 1,
                        _ => {}
                    }
                }
                if !resolved {
                    r.final_unresolved.push(set);
                }
            }
            r
        })
        .collect();

    let mut report = SearchReport::new(if opts.class_mode { "s5-classes" } else { "s5-full" });
    for r in results {
        report.total_enumerated += r.processed;
        report.bump("realized", r.realized);
        report.bump("witnesses_verified", r.verified);
        report.bump("rational_cross_checks", r.cross_checked);
        report.bump("stage1_singular", r.stage1_singular);
        report.bump("stage1_all_negative", r.stage1_allneg);
        for (i, &n) in r.stage_realized.iter().enumerate() {
            report.bump(&format!("stage{}_realized", i + 1), n);
        }
        report
            .flagged
            .extend(r.final_unresolved.iter().map(|s| table.permset(s)));
    }
    let stage1_unresolved =
        report.stats["stage1_singular"] + report.stats["stage1_all_negative"];
    report.bump("stage1_unresolved", stage1_unresolved);
    report.bump("final_unresolved", report.flagged.len() as u64);
    report.finish();
    report
}
