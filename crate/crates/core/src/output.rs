//! Tables and their CSV / JSON renderings.
//!
//! Floats are printed with 12 significant digits, in scientific notation when
//! `0 < |v| < 1e-4`, so identical inputs give byte-identical output.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

/// Fixed 12-significant-digit rendering.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    if v.abs() < 1e-4 {
        return sci;
    }
    // the exponent after rounding decides the number of decimals
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::invalid(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Header row, comma delimiter, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"meta": meta, "data": [{column: value, ..}, ..]}` followed by LF.
    pub fn to_json(&self, meta: Map<String, Value>) -> String {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.clone(), json_cell(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(meta));
        top.insert("data".into(), Value::Array(data));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        s.push('\n');
        s
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format_float(*v),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Int(v) => Value::from(*v),
        // the rounded decimal string parses back to the printed value
        Cell::Float(v) if v.is_finite() => format_float(*v)
            .parse::<f64>()
            .ok()
            .and_then(serde_json::Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Cell::Float(_) | Cell::Empty => Value::Null,
        Cell::Text(s) => Value::String(s.clone()),
    }
}
