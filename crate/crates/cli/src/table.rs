//! Plain tables rendered as CSV or JSON with fixed column order.

use std::io::Write;

use serde_json::{Number, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(Option<f64>),
    Int(usize),
    Flag(bool),
    Text(String),
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

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Flag(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write(
        &self,
        out: &mut dyn Write,
        format: Format,
        precision: usize,
    ) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out, precision),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json(precision))?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write, precision: usize) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| csv_field(c, precision)))?;
        }
        w.flush()
    }

    pub fn to_json(&self, precision: usize) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| json_value(c, precision)).collect()))
            .collect();
        serde_json::json!({ "columns": self.columns, "rows": Value::Array(rows) })
    }
}

fn fixed(x: f64, precision: usize) -> String {
    if x.is_finite() {
        let s = format!("{x:.precision$}");
        // Avoid "-0.000" for values that round to zero.
        if s.trim_start_matches('-')
            .chars()
            .all(|c| c == '0' || c == '.')
        {
            s.trim_start_matches('-').to_owned()
        } else {
            s
        }
    } else {
        x.to_string()
    }
}

fn csv_field(c: &Cell, precision: usize) -> String {
    match c {
        Cell::Real(Some(x)) => fixed(*x, precision),
        Cell::Real(None) => String::new(),
        Cell::Int(i) => i.to_string(),
        Cell::Flag(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn json_value(c: &Cell, precision: usize) -> Value {
    match c {
        Cell::Real(Some(x)) => fixed(*x, precision)
            .parse::<f64>()
            .ok()
            .and_then(Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Cell::Real(None) => Value::Null,
        Cell::Int(i) => Value::from(*i),
        Cell::Flag(b) => Value::Bool(*b),
        Cell::Text(s) if s.is_empty() => Value::Null,
        Cell::Text(s) => Value::String(s.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["alpha", "lower", "note"]);
        t.push(vec![0.25.into(), None.into(), "a, b".into()]);
        t.push(vec![(-1e-12).into(), 1.0.into(), "".into()]);
        t
    }

    #[test]
    fn csv_quotes_and_blanks() {
        let mut buf = Vec::new();
        sample().write(&mut buf, Format::Csv, 3).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "alpha,lower,note\n0.250,,\"a, b\"\n0.000,1.000,\n"
        );
    }

    #[test]
    fn json_keeps_column_order() {
        let v = sample().to_json(3);
        assert_eq!(v["columns"], serde_json::json!(["alpha", "lower", "note"]));
        assert_eq!(v["rows"][0], serde_json::json!([0.25, null, "a, b"]));
    }
}
