//! Append-only text reports: one flagged set per line in the standard
//! permutation-set format, then a stats trailer. A report file is only
//! trusted when its completion marker is present, which is what makes
//! interrupted shards safe to re-run.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::perm::PermSet;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {what}")]
    Malformed {
        path: PathBuf,
        line: usize,
        what: String,
    },
    #[error("{path}: missing completion marker")]
    Incomplete { path: PathBuf },
}

/// Outcome of one enumeration run (or one shard of it).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub kind: String,
    pub total_enumerated: u64,
    /// Identity-containing sets the run flagged, sorted and deduplicated.
    pub flagged: Vec<PermSet>,
    pub stats: BTreeMap<String, u64>,
    pub resumed_from: Option<String>,
}

impl SearchReport {
    pub fn new(kind: &str) -> SearchReport {
        SearchReport {
            kind: kind.to_string(),
            ..SearchReport::default()
        }
    }

    pub fn bump(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn finish(&mut self) {
        self.flagged.sort();
        self.flagged.dedup();
    }

    /// Order-independent merge of shard results.
    pub fn merge(&mut self, other: &SearchReport) {
        debug_assert_eq!(self.kind, other.kind);
        self.total_enumerated += other.total_enumerated;
        self.flagged.extend(other.flagged.iter().cloned());
        for (k, v) in &other.stats {
            self.bump(k, *v);
        }
        self.finish();
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# search report v1")?;
        writeln!(f, "kind {}", self.kind)?;
        if let Some(r) = &self.resumed_from {
            writeln!(f, "resumed-from {r}")?;
        }
        for set in &self.flagged {
            writeln!(f, "{set}")?;
        }
        writeln!(f, "stats total_enumerated {}", self.total_enumerated)?;
        for (k, v) in &self.stats {
            writeln!(f, "stats {k} {v}")?;
        }
        writeln!(f, "# complete")
    }
}

pub fn write_report(report: &SearchReport, path: &Path) -> Result<(), ReportError> {
    let io_err = |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io_err)?;
    }
    let tmp = path.with_extension("partial");
    {
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        write!(f, "{report}").map_err(io_err)?;
    }
    fs::rename(&tmp, path).map_err(io_err)
}

pub fn read_report(path: &Path) -> Result<SearchReport, ReportError> {
    let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut report = SearchReport::default();
    let mut complete = false;
    for (i, line) in text.lines().enumerate() {
        let bad = |what: &str| ReportError::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            what: what.to_string(),
        };
        let line = line.trim();
        if line.is_empty() || line == "# search report v1" {
            continue;
        }
        if line == "# complete" {
            complete = true;
        } else if let Some(kind) = line.strip_prefix("kind ") {
            report.kind = kind.to_string();
        } else if let Some(r) = line.strip_prefix("resumed-from ") {
            report.resumed_from = Some(r.to_string());
        } else if let Some(rest) = line.strip_prefix("stats ") {
            let (k, v) = rest.split_once(' ').ok_or_else(|| bad("bad stats line"))?;
            let v: u64 = v.parse().map_err(|_| bad("bad stats value"))?;
            if k == "total_enumerated" {
                report.total_enumerated = v;
            } else {
                report.stats.insert(k.to_string(), v);
            }
        } else if line.starts_with('{') {
            report
                .flagged
                .push(line.parse().map_err(|e| bad(&format!("{e}")))?);
        } else {
            return Err(bad("unrecognized line"));
        }
    }
    if !complete {
        return Err(ReportError::Incomplete {
            path: path.to_path_buf(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut r = SearchReport::new("s5-full");
        r.total_enumerated = 10;
        r.bump("stage1_unresolved", 3);
        r.flagged.push(
            "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
                .parse()
                .unwrap(),
        );
        r.finish();
        let dir = std::env::temp_dir().join("relorder-report-test");
        let path = dir.join("r.report");
        write_report(&r, &path).unwrap();
        let back = read_report(&path).unwrap();
        assert_eq!(r, back);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn incomplete_rejected() {
        let dir = std::env::temp_dir().join("relorder-report-test2");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r.report");
        std::fs::write(&path, "# search report v1\nkind x\n").unwrap();
        assert!(matches!(
            read_report(&path),
            Err(ReportError::Incomplete { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }
}
