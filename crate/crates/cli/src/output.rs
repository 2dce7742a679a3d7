use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::args::OutFormat;
use crate::error::CliError;

/// One table cell; `Na` renders as `NA` in TSV and `null` in JSON.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Int(u64),
    Num(f64),
    Na,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Na, Cell::Num)
    }
}

impl Cell {
    fn tsv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(x) => x.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Na => "NA".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Int(x) => Value::from(*x),
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Na => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutFormat) -> String {
        match format {
            OutFormat::Tsv => {
                let mut s = self.columns.join("\t");
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t"));
                    s.push('\n');
                }
                s
            }
            OutFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("rows serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// Renders a JSON report, or its scalar fields as `key value` lines.
pub fn render_report(report: &Value, format: OutFormat) -> String {
    match format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        OutFormat::Tsv => {
            let mut s = String::from("key\tvalue\n");
            if let Value::Object(map) = report {
                for (k, v) in map {
                    let text = match v {
                        Value::String(x) => x.clone(),
                        Value::Number(_) | Value::Bool(_) => v.to_string(),
                        Value::Null => "NA".into(),
                        _ => continue,
                    };
                    s.push_str(&format!("{k}\t{text}\n"));
                }
            }
            s
        }
    }
}

pub fn extension(format: OutFormat) -> &'static str {
    match format {
        OutFormat::Tsv => "tsv",
        OutFormat::Json => "json",
    }
}

/// Artifact directory for one run.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(OutDir { root: root.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let p = self.path(name);
        fs::write(&p, contents).map_err(|e| CliError::io(&p, e))
    }

    /// Writes through a buffered writer produced by `f`.
    pub fn write_with<F>(&self, name: &str, f: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
    {
        let p = self.path(name);
        let file = File::create(&p).map_err(|e| CliError::io(&p, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(&p, e))
    }

    /// Appends to a file, creating it if needed; used for incremental tables.
    pub fn append(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let p = self.path(name);
        let mut f = fs::OpenOptions::new().create(true).append(true).open(&p).map_err(|e| CliError::io(&p, e))?;
        f.write_all(contents.as_bytes()).map_err(|e| CliError::io(&p, e))
    }
}
