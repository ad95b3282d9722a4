//! Document assembly and rendering.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use schurkit::{Family, LieType, RootSystem, WeightSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool_version: &'static str,
    pub family: Family,
    pub rank: usize,
    pub r: Option<usize>,
    pub reduced_word: Vec<usize>,
}

impl Header {
    pub fn new(ty: LieType, r: Option<usize>) -> Header {
        Header {
            tool_version: env!("CARGO_PKG_VERSION"),
            family: ty.family(),
            rank: ty.rank(),
            r,
            reduced_word: RootSystem::new(ty).longest_element().word_one_based(),
        }
    }

    fn describe(&self) -> String {
        let word: Vec<String> = self.reduced_word.iter().map(ToString::to_string).collect();
        let r = self.r.map_or_else(|| "-".to_string(), |r| r.to_string());
        format!(
            "schurkit {} family={} rank={} r={} reduced_word={}",
            self.tool_version,
            self.family,
            self.rank,
            r,
            word.join(".")
        )
    }
}

/// Rows for the CSV and text renderings.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A finished job: its document, its table view and the first failed check.
pub struct Document {
    pub header: Header,
    pub body: Map<String, Value>,
    pub table: Table,
    pub failure: Option<String>,
}

impl Document {
    pub fn new(header: Header) -> Document {
        Document {
            header,
            body: Map::new(),
            table: Table::default(),
            failure: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable");
        self.body.insert(key.to_string(), v);
    }

    pub fn fail(&mut self, label: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(label.into());
        }
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert(
                    "header".into(),
                    serde_json::to_value(&self.header).expect("serializable"),
                );
                doc.extend(self.body.clone());
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
            Format::Csv => {
                writeln!(out, "# {}", self.header.describe())?;
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.table.columns)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Text => {
                writeln!(out, "{}", self.header.describe())?;
                let cols = self.table.columns.len();
                let mut widths: Vec<usize> = self
                    .table
                    .columns
                    .iter()
                    .map(|c| c.chars().count())
                    .collect();
                for row in &self.table.rows {
                    for (k, cell) in row.iter().enumerate().take(cols) {
                        widths[k] = widths[k].max(cell.chars().count());
                    }
                }
                let line = |cells: &[String]| -> String {
                    let parts: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    parts.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(&self.table.columns))?;
                for row in &self.table.rows {
                    writeln!(out, "{}", line(row))?;
                }
                Ok(())
            }
        }
    }
}

/// Members of a weight set as coordinate arrays.
pub fn elements(ws: &WeightSet) -> Value {
    let v = serde_json::to_value(ws).expect("serializable");
    v.get("elements")
        .cloned()
        .unwrap_or(Value::Array(Vec::new()))
}

pub fn ints(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
