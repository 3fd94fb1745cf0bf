//! Rendering of command results as newline-delimited JSON or CSV.

use std::str::FromStr;

use serde_json::{Number, Value};

use crate::args::Format;
use crate::CliError;

/// A command result: a JSON document and, where one makes sense, a table.
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn json(json: Value) -> Self {
        Output { json, table: None }
    }

    pub fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(&fix_reals(self.json)).expect("serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let table = self
                    .table
                    .ok_or_else(|| CliError::Usage("this subcommand has no CSV form; use --format json".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.headers).map_err(other)?;
                for row in &table.rows {
                    w.write_record(row).map_err(other)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Other(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
            }
        }
    }
}

fn other(e: csv::Error) -> CliError {
    CliError::Other(e.to_string())
}

/// A real with 17 significant digits; non-finite values have no JSON form.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Integers stay exact; every other number is rewritten by [`real`].
fn fix_reals(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("finite float");
            Value::Number(Number::from_str(&real(x)).expect("valid JSON number"))
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(fix_reals).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, fix_reals(v))).collect()),
        other => other,
    }
}

/// Cell text for an optional real.
pub fn cell(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}
