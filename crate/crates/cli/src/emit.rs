//! CSV and JSON emission.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What a subcommand produces: a flat table for CSV, a JSON document, and
/// whether everything it checked passed.
pub struct Artifact {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    pub pass: bool,
}

impl Artifact {
    pub fn new(headers: Vec<&'static str>, json: Value) -> Self {
        Artifact { headers, rows: Vec::new(), json, pass: true }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).map_err(|e| e.to_string())?;
                for row in &self.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                w.into_inner().map_err(|e| e.to_string())
            }
            Format::Json => {
                // serde_json's default map is ordered by key, which keeps the
                // output stable across runs.
                let mut out = serde_json::to_vec_pretty(&self.json).map_err(|e| e.to_string())?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }
}

pub fn write_output(bytes: &[u8], path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Any serializable value as a JSON value with sorted keys.
pub fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize to JSON")
}

/// A JSON value flattened into a single CSV cell.
pub fn cell<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(&to_json(x)).expect("core types serialize to JSON")
}
