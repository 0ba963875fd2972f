//! Tabular results and their CSV and JSON encodings.

use crate::CliError;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits round-trip every f64
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
        }
    }
}

/// A result table: one header row and rows of equal width.
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
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Fails with the first column holding NaN or an infinity.
    pub fn check_finite(&self) -> Result<(), CliError> {
        for row in &self.rows {
            for (cell, name) in row.iter().zip(&self.columns) {
                if let Cell::Real(v) = cell {
                    if !v.is_finite() {
                        return Err(CliError::NonFinite { column: name });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"command": .., "params": .., "data": [{column: value}, ..]}`.
    pub fn to_json(&self, command: &str, params: Map<String, Value>) -> String {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::from(command));
        top.insert("params".into(), Value::Object(params));
        top.insert("data".into(), Value::Array(data));
        let mut out =
            serde_json::to_string_pretty(&Value::Object(top)).expect("a Value always serializes");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["n", "e", "ok"]);
        t.push(vec![Cell::from(0usize), Cell::from(1.5), Cell::from(true)]);
        assert_eq!(t.to_csv(), "n,e,ok\n0,1.5000000000000000e0,true\n");
    }

    #[test]
    fn non_finite_is_reported() {
        let mut t = Table::new(vec!["x"]);
        t.push(vec![Cell::from(f64::NAN)]);
        assert!(matches!(
            t.check_finite(),
            Err(CliError::NonFinite { column: "x" })
        ));
    }

    #[test]
    fn json_shape() {
        let mut t = Table::new(vec!["y"]);
        t.push(vec![Cell::from(0.25)]);
        let v: Value = serde_json::from_str(&t.to_json("states", Map::new())).unwrap();
        assert_eq!(v["command"], "states");
        assert_eq!(v["data"][0]["y"], 0.25);
    }
}
