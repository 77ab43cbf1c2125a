//! Table serialization. Identical inputs must produce byte-identical files.

use std::fs;
use std::io;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    /// Undefined entry: empty in CSV, null in JSON.
    Empty,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Fixed 12-significant-digit form used for CSV numbers.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

fn cell_csv(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Num(x) => sig12(*x),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn cell_json(cell: &Cell) -> Value {
    match cell {
        Cell::Int(i) => json!(i),
        Cell::Num(x) => json!(x),
        Cell::Text(s) => json!(s),
        Cell::Empty => Value::Null,
    }
}

/// Write a table with its metadata in the requested format.
pub fn emit(meta: &Value, table: &Table, format: Format, path: &Path) -> io::Result<()> {
    let body = match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(cell_csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(cell_json).collect()))
                .collect();
            let doc = json!({
                "schema": 1,
                "meta": meta,
                "data": {
                    "columns": table.columns,
                    "rows": rows,
                },
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
    };
    fs::write(path, body)
}

/// Write a report document (no tabular data) in the requested format; the
/// CSV form flattens the report sections into rows.
pub fn emit_report(
    meta: &Value,
    sections: &Value,
    csv_table: &Table,
    format: Format,
    path: &Path,
) -> io::Result<()> {
    match format {
        Format::Csv => emit(meta, csv_table, format, path),
        Format::Json => {
            let doc = json!({
                "schema": 1,
                "meta": meta,
                "data": sections,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            fs::write(path, s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let dir = std::env::temp_dir().join("floqlat-emit-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.csv");
        let table = Table {
            columns: vec!["a", "b"],
            rows: vec![],
        };
        emit(&json!({}), &table, Format::Csv, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n");
    }

    #[test]
    fn sig12_is_stable() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.5 * std::f64::consts::PI), "4.71238898038e0");
        assert_eq!(sig12(-0.25), "-2.50000000000e-1");
    }
}
