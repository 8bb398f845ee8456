use std::io::Write;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn to_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // shortest round-trip form, exponent notation for extreme magnitudes
            Cell::Num(v) => format!("{v:?}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
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

/// Column-labelled rows, emitted as CSV or as the `columns`/`rows` pair of a
/// JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            bail!("row has {} cells, table has {} columns", row.len(), self.columns.len());
        }
        if row.iter().any(|c| matches!(c, Cell::Num(v) if !v.is_finite())) {
            bail!("non-finite value in output row");
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::to_field))?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["x", "ok", "label"]);
        t.push(vec![0.1.into(), true.into(), "QF+".into()]).unwrap();
        t.push(vec![1e-300.into(), false.into(), "F+".into()]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,ok,label"));
        assert_eq!(lines.next(), Some("0.1,true,QF+"));
        assert_eq!(lines.clone().next(), Some("1e-300,false,F+"));
        let last: f64 = lines.next().unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(last, 1e-300);
    }

    #[test]
    fn rejects_ragged_and_nan_rows() {
        let mut t = Table::new(&["a", "b"]);
        assert!(t.push(vec![1.0.into()]).is_err());
        assert!(t.push(vec![1.0.into(), f64::NAN.into()]).is_err());
    }

    #[test]
    fn json_cells_keep_types() {
        let mut t = Table::new(&["v", "flag", "s"]);
        t.push(vec![0.30000000000000004.into(), true.into(), "x".into()]).unwrap();
        t.push(vec![2.0.into(), false.into(), 7u64.into()]).unwrap();
        let back: Table = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
