//! Command-line front end: counting formulas, realizability checks with
//! witness emission, the symbolic certificate, and the enumeration sweeps.
//!
//! Exit codes for `check`: 0 = realizable (witness attached), 10 =
//! certified unrealizable, 20 = inconclusive. Parse and I/O problems exit
//! nonzero with a diagnostic.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use relorder::counting;
use relorder::perm::PermSet;
use relorder::rational::format_rational;
use relorder::realizer::{builtin_schedules, realize, Realization};
use relorder::search::{
    class_analysis, q0_extension_sets, read_report, search_s5, search_s6_signs, split_range,
    total_combinations, write_report, S5Options, S6Options, SearchReport,
};
use relorder::signs::{sign_report, SignReport};
use relorder::spacetime::{verify_witness_detailed, Witness};

#[derive(Parser)]
#[command(
    name = "relorder",
    about = "Decide, construct and certify sets of event orderings for inertial observers",
    long_about = "Observers in different inertial frames can rank the same spacelike-separated \
events differently. This tool counts the combinatorial configurations, builds exact rational \
witnesses for realizable sets of orderings, proves unrealizability by sign-pattern elimination \
or the symbolic determinant certificate, and reproduces the full enumeration sweeps.\n\n\
Permutation sets are written as {(1,2,3,4,5),(2,3,4,5,1),...}: member (a,b,...) means the \
observer sees event a first, then b, and so on.",
    version
)]
struct Cli {
    /// Output style: human text or one JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the sweeps (default: all cores). The
    /// RELORDER_JOBS environment variable overrides this flag.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts: centralizer, invariant sets, classes, 5-cycles,
    /// and the binomial/power Diophantine scan.
    Count {
        #[command(subcommand)]
        what: CountCommand,
    },
    /// Three-way verdict for a set of orderings: realizable (with witness),
    /// certified unrealizable, or inconclusive.
    Check {
        /// Permutation set, e.g. "{(1,2,3),(2,3,1)}".
        set: String,
        /// Print the per-pair sign-elimination table.
        #[arg(long)]
        signs: bool,
    },
    /// Construct a verified witness for a set of orderings.
    Realize {
        set: String,
        /// Write the witness document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a witness document.
    Verify { file: PathBuf },
    /// Run the symbolic certificate for the cyclic set of five orderings.
    #[command(name = "certify-q0")]
    CertifyQ0 {
        /// Dump the five expanded polynomials, one term per line.
        #[arg(long)]
        dump_polynomials: bool,
    },
    /// Enumeration sweeps (resumable, sharded).
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// Generate the sixth-event extensions of the unrealizable cyclic set.
    #[command(name = "q0-extend")]
    Q0Extend,
    /// Translation-class analysis of sets read from a file (one per line,
    /// "-" for stdin).
    Classes { input: String },
}

#[derive(Subcommand)]
enum CountCommand {
    /// floor(n/2)! * 2^floor(n/2).
    Centralizer {
        #[arg(long)]
        n: usize,
    },
    /// Time-reversal invariant identity-containing k-subsets of S_n.
    #[command(name = "invariant-sets")]
    InvariantSets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Translation equivalence classes of identity-containing 5-subsets.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// 5-cycles in S_n (n = 5 or 6).
    #[command(name = "five-cycles")]
    FiveCycles {
        #[arg(long)]
        n: usize,
    },
    /// Solutions of C(n,2) = 2^(m-1) - 1.
    Diophantine {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        #[arg(long, default_value_t = 14)]
        m_max: u32,
    },
}

#[derive(Args, Clone)]
struct ShardArgs {
    /// Combination-rank interval "A..B" to process.
    #[arg(long)]
    shard: Option<String>,
    /// Directory of shard reports: finished shards are reused, missing ones
    /// run, and the merged report is written alongside them.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Realizability sweep over the 7,940,751 identity-containing
    /// 5-subsets of S_5.
    S5 {
        #[command(flatten)]
        shard: ShardArgs,
        /// Enumerate only the 1,588,155 canonical class representatives.
        #[arg(long)]
        class_mode: bool,
        /// Skip rebuilding and verifying a witness per realized set.
        #[arg(long)]
        no_verify: bool,
        /// Stop after this many schedule stages.
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Sign-elimination sweep over identity-containing 5-subsets of S_6.
    #[command(name = "s6-signs")]
    S6Signs {
        #[command(flatten)]
        shard: ShardArgs,
        /// Enumerate all 11,042,674,501 sets instead of re-deriving the
        /// flagged list from the stored class representatives.
        #[arg(long)]
        long_run: bool,
    },
    /// Same as the top-level q0-extend command.
    #[command(name = "q0-extend")]
    Q0Extend,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.jobs);
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(flag: Option<usize>) {
    let jobs = std::env::var("RELORDER_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .or(flag);
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .ok();
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    match cli.command {
        Command::Count { what } => run_count(what, fmt),
        Command::Check { set, signs } => run_check(&set, signs, fmt),
        Command::Realize { set, out } => run_realize(&set, out.as_deref(), fmt),
        Command::Verify { file } => run_verify(&file, fmt),
        Command::CertifyQ0 { dump_polynomials } => run_certify(dump_polynomials, fmt),
        Command::Search { what } => run_search(what, fmt),
        Command::Q0Extend => run_q0_extend(fmt),
        Command::Classes { input } => run_classes(&input, fmt),
    }
}

fn emit_values(fmt: Format, command: &str, fields: Vec<(&str, serde_json::Value)>) -> ExitCode {
    match fmt {
        Format::Text => {
            for (_, v) in &fields {
                match v {
                    serde_json::Value::Array(items) => {
                        for i in items {
                            println!("{}", flat(i));
                        }
                    }
                    other => println!("{}", flat(other)),
                }
            }
        }
        Format::Structured => {
            let mut doc = serde_json::Map::new();
            doc.insert("command".into(), json!(command));
            for (k, v) in fields {
                doc.insert(k.into(), v);
            }
            println!("{}", serde_json::Value::Object(doc));
        }
    }
    ExitCode::SUCCESS
}

fn flat(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run_count(what: CountCommand, fmt: Format) -> Result<ExitCode> {
    let (key, fields): (&str, Vec<(&str, serde_json::Value)>) = match what {
        CountCommand::Centralizer { n } => (
            "centralizer",
            vec![("value", json!(counting::centralizer_order(n).to_string()))],
        ),
        CountCommand::InvariantSets { n, k } => (
            "invariant-sets",
            vec![("value", json!(counting::invariant_set_count(n, k).to_string()))],
        ),
        CountCommand::Classes { n, k } => (
            "classes",
            vec![(
                "value",
                json!(counting::equivalence_class_count(n, k)?.to_string()),
            )],
        ),
        CountCommand::FiveCycles { n } => (
            "five-cycles",
            vec![
                ("value", json!(counting::five_cycle_count(n)?.to_string())),
                (
                    "subgroups",
                    json!(counting::order5_subgroup_count(n)?.to_string()),
                ),
            ],
        ),
        CountCommand::Diophantine { n_max, m_max } => {
            let sols = counting::diophantine_solutions(n_max, m_max);
            (
                "diophantine",
                vec![(
                    "solutions",
                    json!(sols
                        .iter()
                        .map(|(n, m)| format!("n={n} m={m}"))
                        .collect::<Vec<_>>()),
                )],
            )
        }
    };
    let mut all = vec![("key", json!(key))];
    all.extend(fields);
    // text mode prints plain decimal values only
    if fmt == Format::Text {
        return Ok(emit_values(fmt, "count", all.split_off(1)));
    }
    Ok(emit_values(fmt, "count", all))
}

fn witness_json(w: &Witness) -> serde_json::Value {
    json!({
        "dimension": w.events.first().map_or(0, |e| e.x.len()),
        "events": w.events.iter().map(|e| {
            let mut row = vec![format_rational(&e.t)];
            row.extend(e.x.iter().map(format_rational));
            row
        }).collect::<Vec<_>>(),
        "velocities": w.velocities.iter().map(|v| {
            v.0.iter().map(format_rational).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "claim": w.claim.to_string(),
    })
}

fn print_sign_table(report: &SignReport) {
    println!("sign table for presentation {}", report.table.presentation);
    for (pair, class) in &report.table.rows {
        println!("  pair {pair}: eliminates {}", class.pattern());
    }
    if report.table.missing.is_empty() {
        println!("  every live sign pattern is eliminated");
    } else {
        for m in &report.table.missing {
            println!("  never eliminated: {}", m.pattern());
        }
    }
}

enum Verdict {
    Realizable(Box<Realization>),
    Unrealizable(&'static str),
    Inconclusive,
}

fn decide(q: &PermSet) -> Result<(Verdict, Option<SignReport>)> {
    let n = q.n();
    if q.len() <= 4 {
        let r = realize(q, &[])?.expect("small sets always realize");
        return Ok((Verdict::Realizable(Box::new(r)), None));
    }
    if q.len() != 5 || (n != 5 && n != 6) {
        bail!(
            "unsupported configuration: {} orderings of {} events (supported: up to 4 orderings \
             of any events, or 5 orderings of 5 or 6 events)",
            q.len(),
            n
        );
    }
    let cyclic: PermSet = "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
        .parse()
        .unwrap();
    if n == 5 && q.canonicalize() == cyclic {
        let (report, _) = relorder::certificate::certify_q0()
            .map_err(|e| anyhow!("certificate failed: {e}"))?;
        debug_assert!(report.certified_unrealizable);
        return Ok((
            Verdict::Unrealizable("symbolic determinant certificate"),
            None,
        ));
    }
    let signs = if n == 6 { Some(sign_report(q)?) } else { None };
    if signs.as_ref().is_some_and(|s| s.unrealizable) {
        return Ok((Verdict::Unrealizable("sign-pattern elimination"), signs));
    }
    match realize(q, &builtin_schedules(n))? {
        Some(r) => Ok((Verdict::Realizable(Box::new(r)), signs)),
        None => Ok((Verdict::Inconclusive, signs)),
    }
}

fn run_check(set: &str, show_signs: bool, fmt: Format) -> Result<ExitCode> {
    let q: PermSet = set.parse().context("parsing the permutation set")?;
    let (verdict, signs) = decide(&q)?;
    let (label, code, witness, certificate) = match &verdict {
        Verdict::Realizable(r) => ("REALIZABLE", 0u8, Some(&r.witness), None),
        Verdict::Unrealizable(how) => ("UNREALIZABLE-CERTIFIED", 10, None, Some(*how)),
        Verdict::Inconclusive => ("INCONCLUSIVE", 20, None, None),
    };
    match fmt {
        Format::Text => {
            println!("{label}");
            if let Some(how) = certificate {
                println!("certificate: {how}");
            }
            if let Some(w) = witness {
                print!("{w}");
            }
            if show_signs {
                match &signs {
                    Some(s) => print_sign_table(s),
                    None => println!("sign table: not applicable (needs 5 orderings of 6 events)"),
                }
            }
        }
        Format::Structured => {
            let mut doc = json!({
                "command": "check",
                "set": q.to_string(),
                "verdict": label,
            });
            if let Some(w) = witness {
                doc["witness"] = witness_json(w);
            }
            if let Some(how) = certificate {
                doc["certificate"] = json!(how);
            }
            if show_signs {
                if let Some(s) = &signs {
                    doc["sign_table"] = json!(s
                        .table
                        .rows
                        .iter()
                        .map(|(p, c)| json!({"pair": p.to_string(), "eliminates": c.pattern()}))
                        .collect::<Vec<_>>());
                    doc["sign_missing"] = json!(s
                        .table
                        .missing
                        .iter()
                        .map(|c| c.pattern())
                        .collect::<Vec<_>>());
                }
            }
            println!("{doc}");
        }
    }
    Ok(ExitCode::from(code))
}

fn run_realize(set: &str, out: Option<&Path>, fmt: Format) -> Result<ExitCode> {
    let q: PermSet = set.parse().context("parsing the permutation set")?;
    let schedules = if q.len() == 5 {
        builtin_schedules(q.n())
    } else {
        Vec::new()
    };
    match realize(&q, &schedules)? {
        Some(r) => {
            if let Some(path) = out {
                std::fs::write(path, r.witness.to_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match fmt {
                Format::Text => {
                    println!(
                        "REALIZED via translation {}, solved observer {}, schedule {}",
                        r.translation, r.solved, r.schedule
                    );
                    if out.is_none() {
                        print!("{}", r.witness);
                    }
                }
                Format::Structured => {
                    println!(
                        "{}",
                        json!({
                            "command": "realize",
                            "set": q.to_string(),
                            "realized": true,
                            "translation": r.translation,
                            "solved": r.solved,
                            "schedule": r.schedule,
                            "witness": witness_json(&r.witness),
                        })
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            match fmt {
                Format::Text => println!("NOT REALIZED by the built-in schedules (inconclusive)"),
                Format::Structured => println!(
                    "{}",
                    json!({"command": "realize", "set": q.to_string(), "realized": false})
                ),
            }
            Ok(ExitCode::from(20))
        }
    }
}

fn run_verify(file: &Path, fmt: Format) -> Result<ExitCode> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let w: Witness = text.parse().map_err(|e| anyhow!("{e}"))?;
    let outcome = verify_witness_detailed(&w);
    let ok = outcome.is_ok();
    match fmt {
        Format::Text => match &outcome {
            Ok(()) => println!("VERIFIED"),
            Err(v) => println!("REJECTED: {v}"),
        },
        Format::Structured => println!(
            "{}",
            json!({
                "command": "verify",
                "verified": ok,
                "violation": outcome.err().map(|v| v.to_string()),
            })
        ),
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_certify(dump: bool, fmt: Format) -> Result<ExitCode> {
    let (report, polys) =
        relorder::certificate::certify_q0().map_err(|e| anyhow!("certificate failed: {e}"))?;
    match fmt {
        Format::Text => {
            for (i, (terms, sign)) in report
                .determinant_terms
                .iter()
                .zip(&report.determinant_signs)
                .enumerate()
            {
                println!("D{}: {terms} terms, {sign}", i + 1);
            }
            println!(
                "beta*D4: {} terms, {}",
                report.beta_d4_terms, report.beta_d4_sign
            );
            println!(
                "conclusion: cyclic set {}",
                if report.certified_unrealizable {
                    "certified unrealizable"
                } else {
                    "NOT certified"
                }
            );
            if dump {
                for (name, p) in [
                    ("D1", &polys.d[0]),
                    ("D2", &polys.d[1]),
                    ("D3", &polys.d[2]),
                    ("D4", &polys.d[3]),
                    ("beta*D4", &polys.beta_d4),
                ] {
                    println!("polynomial {name}");
                    print!("{p}");
                }
            }
        }
        Format::Structured => {
            let mut doc = json!({
                "command": "certify-q0",
                "determinant_terms": report.determinant_terms,
                "determinant_signs": report.determinant_signs.iter()
                    .map(|s| s.to_string()).collect::<Vec<_>>(),
                "beta_d4_terms": report.beta_d4_terms,
                "beta_d4_sign": report.beta_d4_sign.to_string(),
                "certified_unrealizable": report.certified_unrealizable,
            });
            if dump {
                doc["polynomials"] = json!({
                    "D1": polys.d[0].to_string(),
                    "D2": polys.d[1].to_string(),
                    "D3": polys.d[2].to_string(),
                    "D4": polys.d[3].to_string(),
                    "beta_d4": polys.beta_d4.to_string(),
                });
            }
            println!("{doc}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_shard(spec: &str) -> Result<(u64, u64)> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| anyhow!("shard must look like A..B"))?;
    let a: u64 = a.trim().parse().context("shard start")?;
    let b: u64 = b.trim().parse().context("shard end")?;
    if a >= b {
        bail!("empty shard {a}..{b}");
    }
    Ok((a, b))
}

fn print_report(report: &SearchReport, fmt: Format) {
    match fmt {
        Format::Text => print!("{report}"),
        Format::Structured => {
            println!(
                "{}",
                json!({
                    "command": "search",
                    "kind": report.kind,
                    "total_enumerated": report.total_enumerated,
                    "stats": report.stats,
                    "flagged": report.flagged.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "resumed_from": report.resumed_from,
                })
            );
        }
    }
}

/// Runs a shardable sweep, reusing completed shard reports under the resume
/// directory when present.
fn run_sharded<F>(
    kind: &str,
    total: u64,
    shard: &ShardArgs,
    fmt: Format,
    run_range: F,
) -> Result<ExitCode>
where
    F: Fn(Option<(u64, u64)>) -> SearchReport,
{
    let explicit = shard.shard.as_deref().map(parse_shard).transpose()?;
    match &shard.resume {
        None => {
            let report = run_range(explicit);
            print_report(&report, fmt);
            Ok(ExitCode::SUCCESS)
        }
        Some(dir) => {
            let ranges = match explicit {
                Some(r) => vec![r],
                None => split_range(total, 64),
            };
            let mut merged: Option<SearchReport> = None;
            for (a, b) in ranges {
                let path = dir.join(format!("{kind}-shard-{a}-{b}.report"));
                let shard_report = match read_report(&path) {
                    Ok(r) => r,
                    Err(_) => {
                        let r = run_range(Some((a, b)));
                        write_report(&r, &path)?;
                        r
                    }
                };
                match &mut merged {
                    None => merged = Some(shard_report),
                    Some(m) => m.merge(&shard_report),
                }
            }
            let mut merged = merged.expect("at least one shard");
            merged.resumed_from = Some(dir.display().to_string());
            write_report(&merged, &dir.join(format!("{kind}-merged.report")))?;
            print_report(&merged, fmt);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_search(what: SearchCommand, fmt: Format) -> Result<ExitCode> {
    match what {
        SearchCommand::S5 {
            shard,
            class_mode,
            no_verify,
            stages,
        } => {
            let opts = S5Options {
                class_mode,
                verify_witnesses: !no_verify,
                stage_limit: stages,
                shard: None,
            };
            let kind = if class_mode { "s5-classes" } else { "s5-full" };
            run_sharded(kind, total_combinations(119), &shard, fmt, |range| {
                search_s5(&S5Options {
                    shard: range,
                    ..opts.clone()
                })
            })
        }
        SearchCommand::S6Signs { shard, long_run } => {
            if !long_run {
                let report = search_s6_signs(&S6Options::default());
                print_report(&report, fmt);
                return Ok(ExitCode::SUCCESS);
            }
            run_sharded("s6-signs", total_combinations(719), &shard, fmt, |range| {
                search_s6_signs(&S6Options {
                    long_run: true,
                    shard: range,
                })
            })
        }
        SearchCommand::Q0Extend => run_q0_extend(fmt),
    }
}

fn run_q0_extend(fmt: Format) -> Result<ExitCode> {
    let (report, _) = q0_extension_sets();
    print_report(&report, fmt);
    Ok(ExitCode::SUCCESS)
}

fn run_classes(input: &str, fmt: Format) -> Result<ExitCode> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    let sets: Vec<PermSet> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse().map_err(|e| anyhow!("{e} in line {l:?}")))
        .collect::<Result<_>>()?;
    if sets.is_empty() {
        bail!("no sets in input");
    }
    let stats = class_analysis(&sets);
    match fmt {
        Format::Text => {
            for (k, v) in stats.as_stats() {
                println!("{k} {v}");
            }
        }
        Format::Structured => {
            println!(
                "{}",
                json!({"command": "classes", "stats": stats.as_stats()})
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
