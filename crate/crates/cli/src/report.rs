//! Report emission as JSON or CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Format};

/// A flat scan row with a fixed column set.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// Vectors inside CSV cells.
pub fn join(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
    quiet: bool,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format, quiet: bool) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { out, format, quiet })
    }

    /// Writes one report object. CSV output has a header of the flattened
    /// field names (sorted) and a single row.
    pub fn report<T: Serialize>(&mut self, report: &T) -> Result<(), CliError> {
        if self.quiet {
            return Ok(());
        }
        let value = serde_json::to_value(report).map_err(io_err)?;
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.out, &value).map_err(io_err)?;
                writeln!(self.out).map_err(io_err)?;
            }
            Format::Csv => {
                let mut cols = Vec::new();
                flatten("", &value, &mut cols);
                let mut w = csv::Writer::from_writer(&mut self.out);
                w.write_record(cols.iter().map(|c| &c.0)).map_err(csv_err)?;
                w.write_record(cols.iter().map(|c| &c.1)).map_err(csv_err)?;
                w.flush().map_err(io_err)?;
            }
        }
        self.out.flush().map_err(io_err)
    }

    /// Writes scan rows in the order given.
    pub fn rows<R: Row>(&mut self, rows: &[R]) -> Result<(), CliError> {
        if self.quiet {
            return Ok(());
        }
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.out, rows).map_err(io_err)?;
                writeln!(self.out).map_err(io_err)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.out);
                w.write_record(R::header()).map_err(csv_err)?;
                for row in rows {
                    w.write_record(row.cells()).map_err(csv_err)?;
                }
                w.flush().map_err(io_err)?;
            }
        }
        self.out.flush().map_err(io_err)
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), cells.join(";")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}
