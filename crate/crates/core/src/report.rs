//! Deterministic CSV/JSON tables.
//!
//! Floats use the shortest decimal that round-trips (`0.1` → `"0.1"`),
//! identical in both formats. CSV is RFC 4180 with LF line endings; JSON
//! keeps column order.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidInput(format!("unknown format '{other}' (csv|json)"))),
        }
    }
}

/// Homogeneous rows under a fixed header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Output(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Appends a serializable struct whose fields match the header in order.
    pub fn push_record<T: Serialize>(&mut self, record: &T) -> Result<()> {
        let map = to_object(record)?;
        let keys: Vec<&String> = map.keys().collect();
        if keys.len() != self.columns.len() || keys.iter().zip(&self.columns).any(|(a, b)| *a != b) {
            return Err(Error::Output(format!("record fields {keys:?} do not match header {:?}", self.columns)));
        }
        self.rows.push(map.into_iter().map(|(_, v)| v).collect());
        Ok(())
    }

    /// Table whose header is taken from the first record's field names.
    pub fn from_records<T: Serialize>(columns: &[&str], records: &[T]) -> Result<Self> {
        let mut t = Table::new(columns);
        for r in records {
            t.push_record(r)?;
        }
        Ok(t)
    }
}

fn to_object<T: Serialize>(record: &T) -> Result<Map<String, Value>> {
    match serde_json::to_value(record).map_err(|e| Error::Output(e.to_string()))? {
        Value::Object(map) => Ok(map),
        other => Err(Error::Output(format!("record is not an object: {other}"))),
    }
}

/// Finite floats as shortest round-trip JSON numbers; non-finite as null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Output(e.to_string())
}

pub fn emit_table(table: &Table, format: Format, sink: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink);
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row.iter().map(cell)).map_err(io)?;
            }
            w.flush().map_err(io)
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| Value::Object(table.columns.iter().cloned().zip(row.iter().cloned()).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut *sink, &rows).map_err(io)?;
            sink.write_all(b"\n").map_err(io)
        }
    }
}

/// Single record: a JSON object, or a one-row CSV table.
pub fn emit_record(columns: &[&str], values: Vec<Value>, format: Format, sink: &mut dyn Write) -> Result<()> {
    let mut table = Table::new(columns);
    table.push(values)?;
    match format {
        Format::Csv => emit_table(&table, format, sink),
        Format::Json => {
            let obj: Map<String, Value> = table.columns.into_iter().zip(table.rows.remove(0)).collect();
            serde_json::to_writer_pretty(&mut *sink, &obj).map_err(io)?;
            sink.write_all(b"\n").map_err(io)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        emit_table(t, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(render(&Table::new(&["a", "b"]), Format::Csv), "a,b\n");
    }

    #[test]
    fn one_row_json_array() {
        let mut t = Table::new(&["x"]);
        t.push(vec![num(1.5)]).unwrap();
        let v: Value = serde_json::from_str(&render(&t, Format::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
    }

    #[test]
    fn shortest_round_trip_floats() {
        let mut t = Table::new(&["x", "y", "z"]);
        t.push(vec![num(0.1), num(1e-300), num(9.2297e21)]).unwrap();
        assert_eq!(render(&t, Format::Csv), "x,y,z\n0.1,1e-300,9.2297e+21\n");
        let s = render(&t, Format::Json);
        assert!(s.contains("0.1") && !s.contains("0.10000"));
    }

    #[test]
    fn csv_quoting_and_nulls() {
        let mut t = Table::new(&["name", "v"]);
        t.push(vec![json!("a,\"b\""), num(f64::INFINITY)]).unwrap();
        assert_eq!(render(&t, Format::Csv), "name,v\n\"a,\"\"b\"\"\",\n");
    }

    #[test]
    fn key_order_is_stable() {
        let mut t = Table::new(&["zeta", "alpha"]);
        t.push(vec![num(1.0), num(2.0)]).unwrap();
        let s = render(&t, Format::Json);
        assert!(s.find("zeta").unwrap() < s.find("alpha").unwrap());
    }

    #[test]
    fn records_must_match_header() {
        #[derive(Serialize)]
        struct R {
            a: f64,
            b: u32,
        }
        let t = Table::from_records(&["a", "b"], &[R { a: 0.5, b: 2 }]).unwrap();
        assert_eq!(render(&t, Format::Csv), "a,b\n0.5,2\n");
        assert!(Table::from_records(&["b", "a"], &[R { a: 0.5, b: 2 }]).is_err());
        assert!(Table::new(&["a"]).push(vec![]).is_err());
    }

    #[test]
    fn single_record_json_object() {
        let mut buf = Vec::new();
        emit_record(&["k"], vec![num(3.0)], Format::Json, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\n  \"k\": 3.0\n}\n");
    }
}
