//! Output tables shared by every subcommand. CSV and JSON are rendered
//! from the same cells, so both formats carry identical values.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(Option<f64>),
    Flag(bool),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Real(Some(x)) => format_real(*x),
            Cell::Real(None) => String::new(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(i),
            // serde_json has no representation for non-finite values.
            Cell::Real(Some(x)) if x.is_finite() => json!(x),
            Cell::Real(_) => Value::Null,
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(Some(x))
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        Cell::Real(x)
    }
}

/// Shortest text that parses back to the same f64.
fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: impl Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::io("writing CSV", e.into());
        w.write_record(self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::io("writing CSV", e))
    }

    pub fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().zip(row).map(|(k, v)| (k.to_string(), v.json())).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// A rendered command result: the table plus JSON-only context.
pub struct Report {
    pub config: Value,
    pub mode: &'static str,
    pub table: Table,
    pub extra: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn write(&self, format: Format, out: impl Write) -> CliResult<()> {
        match format {
            Format::Csv => self.table.write_csv(out),
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("config".into(), self.config.clone());
                doc.insert("mode".into(), Value::String(self.mode.into()));
                doc.insert("rows".into(), self.table.json_rows());
                for (k, v) in &self.extra {
                    doc.insert(k.to_string(), v.clone());
                }
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &Value::Object(doc))
                    .map_err(|e| CliError::io("writing JSON", e.into()))?;
                writeln!(out).map_err(|e| CliError::io("writing JSON", e))
            }
        }
    }
}
