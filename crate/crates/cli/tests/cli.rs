//! End-to-end checks of the command-line surface: exit codes for the
//! three-way verdict, witness round-trips through files, counting output,
//! and the report/resume machinery.

use std::path::PathBuf;
use std::process::{Command, Output};

fn relorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relorder"))
        .args(args)
        .env("RELORDER_JOBS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relorder-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const Q0: &str = "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}";

#[test]
fn counting_values() {
    let out = relorder(&["count", "centralizer", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "48");

    let out = relorder(&["count", "invariant-sets", "--n", "6", "--k", "5"]);
    assert_eq!(stdout(&out).trim(), "597861");

    let out = relorder(&["count", "classes", "--n", "6"]);
    assert_eq!(stdout(&out).trim(), "2208534929");

    let out = relorder(&["count", "five-cycles", "--n", "6"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("144"));
    assert_eq!(lines.next(), Some("36"));
}

#[test]
fn check_exit_codes() {
    // realizable pair: exit 0
    let out = relorder(&["check", "{(1,2,3),(3,2,1)}"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("REALIZABLE"));

    // the cyclic set: certified unrealizable, exit 10
    let out = relorder(&["check", Q0]);
    assert_eq!(out.status.code(), Some(10));
    assert!(stdout(&out).contains("UNREALIZABLE-CERTIFIED"));

    // a sign-blocked set of six events: exit 10 via elimination
    let blocked = "{(1,2,3,4,5,6),(1,4,6,5,3,2),(2,6,1,5,4,3),(4,3,2,6,1,5),(5,4,2,1,3,6)}";
    let out = relorder(&["check", blocked, "--signs"]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.contains("sign-pattern elimination"));
    assert!(text.contains("every live sign pattern is eliminated"));

    // parse errors exit 2
    let out = relorder(&["check", "{(1,1,2)}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_inconclusive_extension_set() {
    // a cyclic-set extension: sign test cannot fire, the gap pipeline
    // cannot realize it, so the verdict is inconclusive with exit 20
    let extension = "{(1,2,3,4,5,6),(2,3,4,5,6,1),(3,4,5,6,1,2),(5,6,1,2,3,4),(6,1,2,3,4,5)}";
    let out = relorder(&["check", extension]);
    assert_eq!(out.status.code(), Some(20));
    assert!(stdout(&out).contains("INCONCLUSIVE"));
}

#[test]
fn realize_verify_roundtrip() {
    let dir = tmpdir("witness");
    let path = dir.join("w.txt");
    let set = "{(1,2,3,4,5),(2,1,3,4,5),(1,3,2,4,5),(1,2,4,3,5),(1,2,3,5,4)}";
    let out = relorder(&["realize", set, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = relorder(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "VERIFIED");

    // tamper with one coordinate: the verifier must reject
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replacen("claim", "claim {(9)}\nclaim", 1);
    let bad_path = dir.join("bad.txt");
    std::fs::write(&bad_path, bad).unwrap();
    let out = relorder(&["verify", bad_path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_format_is_bit_exact() {
    let dir = tmpdir("roundtrip");
    let path = dir.join("w.txt");
    let out = relorder(&["realize", "{(1,2,3,4),(4,3,2,1)}", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let reparsed: relorder::spacetime::Witness = first.parse().unwrap();
    assert_eq!(reparsed.to_string(), first);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn certify_q0_summary() {
    let out = relorder(&["certify-q0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("D4: 125 terms, all-positive"));
    assert!(text.contains("beta*D4: 125 terms, all-negative"));
    assert!(text.contains("certified unrealizable"));

    let out = relorder(&["--format", "structured", "certify-q0"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["determinant_terms"], serde_json::json!([125, 125, 125, 125]));
    assert_eq!(doc["certified_unrealizable"], serde_json::json!(true));
}

#[test]
fn q0_extend_report() {
    let out = relorder(&["q0-extend", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["stats"]["deduplicated"], serde_json::json!(7676));
    assert_eq!(doc["stats"]["classes"], serde_json::json!(1540));
}

#[test]
fn classes_command_reads_stdin_format() {
    let dir = tmpdir("classes");
    let path = dir.join("sets.txt");
    std::fs::write(&path, format!("# comment\n{Q0}\n")).unwrap();
    let out = relorder(&["classes", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classes 1"));
    assert!(text.contains("group_classes 1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sharded_search_resumes() {
    let dir = tmpdir("resume");
    // tiny explicit shard, run twice: second run must reuse the report
    let shard = "0..2000";
    let args = [
        "search",
        "s5",
        "--shard",
        shard,
        "--resume",
        dir.to_str().unwrap(),
        "--stages",
        "1",
        "--no-verify",
    ];
    let out1 = relorder(&args);
    assert_eq!(out1.status.code(), Some(0), "{}", stdout(&out1));
    let shard_file = dir.join("s5-full-shard-0-2000.report");
    assert!(shard_file.exists());
    let stamp = std::fs::metadata(&shard_file).unwrap().modified().unwrap();
    let out2 = relorder(&args);
    assert_eq!(out2.status.code(), Some(0));
    let stamp2 = std::fs::metadata(&shard_file).unwrap().modified().unwrap();
    assert_eq!(stamp, stamp2, "completed shard was re-run");
    assert_eq!(stdout(&out1), stdout(&out2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_flags_rejected() {
    let out = relorder(&["count", "centralizer", "--n", "5", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = relorder(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
