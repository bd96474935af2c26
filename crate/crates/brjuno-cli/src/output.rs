use std::collections::BTreeMap;

use serde::ser::{Serialize, Serializer};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Non-finite numbers become the strings `inf`, `-inf`, `NaN`.
impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Num(v) => s.serialize_str(&format!("{v}")),
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Bool(v) => s.serialize_bool(*v),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// Result of one evaluation.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    pub detail: Option<serde_json::Value>,
    /// Significand bits of the arithmetic actually used.
    pub bits: u32,
    pub unreliable: bool,
}

impl Report {
    pub fn new(columns: &[&'static str], bits: u32) -> Self {
        Report { columns: columns.to_vec(), bits, ..Report::default() }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &'static str, v: impl Into<Cell>) {
        self.summary.push((key, v.into()));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub params: BTreeMap<String, String>,
    pub bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<String>,
}

impl Meta {
    pub fn new(command: &'static str, params: BTreeMap<String, String>, bits: u32, sweep: Option<String>) -> Self {
        Meta { tool: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), command, params, bits, sweep }
    }
}

/// A table ready to be written: the `bits` column is appended here.
pub struct Artifact<'a> {
    pub meta: &'a Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: &'a [(&'static str, Cell)],
    pub detail: Option<&'a serde_json::Value>,
}

impl<'a> Artifact<'a> {
    pub fn from_report(meta: &'a Meta, r: &'a Report) -> Self {
        let mut columns = r.columns.clone();
        columns.push("bits");
        let rows = r
            .rows
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.push(Cell::Int(r.bits as i64));
                row
            })
            .collect();
        Artifact { meta, columns, rows, summary: &r.summary, detail: r.detail.as_ref() }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> Result<Vec<u8>, CliError> {
        let mut head = String::new();
        let m = self.meta;
        head.push_str(&format!("# {} {}\n", m.tool, m.version));
        head.push_str(&format!("# command: {}\n", m.command));
        for (k, v) in &m.params {
            head.push_str(&format!("# param {k}={v}\n"));
        }
        if let Some(s) = &m.sweep {
            head.push_str(&format!("# sweep {s}\n"));
        }
        head.push_str(&format!("# bits: {}\n", m.bits));
        for (k, v) in self.summary {
            head.push_str(&format!("# {k}: {}\n", v.csv()));
        }
        let mut w = csv::Writer::from_writer(head.into_bytes());
        w.write_record(&self.columns).map_err(CliError::io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(CliError::io)?;
        }
        w.into_inner().map_err(|e| CliError::io(e.into_error()))
    }

    fn json(&self) -> Result<Vec<u8>, CliError> {
        #[derive(serde::Serialize)]
        struct Doc<'b> {
            meta: &'b Meta,
            columns: &'b [&'static str],
            rows: &'b [Vec<Cell>],
            summary: BTreeMap<&'static str, &'b Cell>,
            #[serde(skip_serializing_if = "Option::is_none")]
            detail: Option<&'b serde_json::Value>,
        }
        let doc = Doc {
            meta: self.meta,
            columns: &self.columns,
            rows: &self.rows,
            summary: self.summary.iter().map(|(k, v)| (*k, v)).collect(),
            detail: self.detail,
        };
        let mut out = serde_json::to_vec_pretty(&doc).map_err(CliError::io)?;
        out.push(b'\n');
        Ok(out)
    }
}
