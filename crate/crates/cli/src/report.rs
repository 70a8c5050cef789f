//! JSON-lines reports.
//!
//! A report file holds one JSON object per line, each of the form
//! `{"schema_version": 1, "kind": "...", "data": {...}}`. The version is
//! bumped whenever the shape of any `data` payload changes incompatibly.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// Version of the report format.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    data: &'a T,
}

/// Writes one report file, replacing any previous one.
pub struct ReportWriter {
    path: PathBuf,
    file: BufWriter<File>,
}

impl ReportWriter {
    /// Creates `<dir>/<name>.jsonl`, creating `dir` if needed.
    pub fn create(dir: &Path, name: &str) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(format!("{name}.jsonl"));
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        Ok(ReportWriter {
            path,
            file: BufWriter::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one record.
    pub fn record<T: Serialize>(&mut self, kind: &str, data: &T) -> Result<(), CliError> {
        let line = serde_json::to_string(&Record {
            schema_version: SCHEMA_VERSION,
            kind,
            data,
        })?;
        writeln!(self.file, "{line}").map_err(|e| CliError::io(&self.path, e))
    }

    pub fn finish(mut self) -> Result<PathBuf, CliError> {
        self.file.flush().map_err(|e| CliError::io(&self.path, e))?;
        Ok(self.path)
    }
}

/// Reads every record of a report file.
pub fn read_report(path: &Path) -> Result<Vec<serde_json::Value>, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    BufReader::new(file)
        .lines()
        .map(|line| {
            let line = line.map_err(|e| CliError::io(path, e))?;
            Ok(serde_json::from_str(&line)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut w = ReportWriter::create(&dir.path().join("r"), "x").unwrap();
        w.record("thing", &serde_json::json!({"a": 1})).unwrap();
        w.record("thing", &serde_json::json!({"a": 2})).unwrap();
        let path = w.finish().unwrap();
        let recs = read_report(&path).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1]["schema_version"], SCHEMA_VERSION);
        assert_eq!(recs[1]["kind"], "thing");
        assert_eq!(recs[1]["data"]["a"], 2);
    }
}
