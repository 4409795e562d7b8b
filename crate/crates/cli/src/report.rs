use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::opts::{Format, Opts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Diverged,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Diverged => 3,
        }
    }

    pub fn from_checks(all: impl IntoIterator<Item = Status>) -> Status {
        all.into_iter().fold(Status::Pass, |acc, s| match (acc, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Diverged, _) | (_, Status::Diverged) => Status::Diverged,
            _ => Status::Pass,
        })
    }
}

/// Rows for the TSV rendering; cells are already formatted.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub version: &'static str,
    pub config: Opts,
    pub status: Status,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = format!("# truncgr {} {}\n", self.version, self.command);
                if let Value::Object(map) = serde_json::to_value(&self.config).expect("config serializes") {
                    for (k, v) in map {
                        s.push_str(&format!("# config {k}={}\n", cell(&v)));
                    }
                }
                s.push_str(&format!("# status {}\n", cell(&serde_json::to_value(self.status).unwrap())));
                s.push_str(&self.table.header.join("\t"));
                s.push('\n');
                for row in &self.table.rows {
                    s.push_str(&row.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t"));
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_precedence() {
        use Status::*;
        assert_eq!(Status::from_checks([Pass, Diverged, Pass]), Diverged);
        assert_eq!(Status::from_checks([Diverged, Fail]), Fail);
        assert_eq!(Status::from_checks([]), Pass);
    }
}
