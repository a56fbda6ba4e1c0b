use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::VERSION;

pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

/// A row of output. JSON uses the derived serialization, CSV the cells.
pub trait Record: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

#[derive(Serialize)]
struct Document<'a, R> {
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    records: &'a [R],
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) if v.is_finite() => format!("{v:.16e}"),
        Cell::Num(v) => format!("{v}"),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Missing => String::new(),
    }
}

pub fn render<R: Record>(
    command: &str,
    config: &RunConfig,
    records: &[R],
) -> Result<String, CliError> {
    match config.format {
        Format::Json => {
            let doc = Document {
                version: VERSION,
                command,
                config,
                records,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Config(format!("cannot serialize output: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let cfg = serde_json::to_string(config)
                .map_err(|e| CliError::Config(format!("cannot serialize config: {e}")))?;
            let mut s = format!("# spinring {VERSION} {command} config={cfg}\n");
            s.push_str(&R::COLUMNS.join(","));
            s.push('\n');
            for r in records {
                let row: Vec<String> = r.cells().iter().map(csv_cell).collect();
                let _ = writeln!(s, "{}", row.join(","));
            }
            Ok(s)
        }
    }
}

pub fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
