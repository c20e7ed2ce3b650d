use std::io::Write;

use anyhow::Result;
use hypergreedy::fmt::sig9;
use serde_json::{Map, Number, Value};

/// One output value. CSV and JSON are both rendered from these, so the two
/// formats carry the same digits.
#[derive(Debug, Clone)]
pub enum Cell {
    /// Decimal digits of an integer of any size.
    Int(String),
    Float(f64),
    Floats(Vec<f64>),
    /// Exact rational as decimal numerator and denominator strings.
    Ratio(String, String),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(x: impl ToString) -> Self {
        Cell::Int(x.to_string())
    }

    pub fn ratio(num: impl ToString, den: impl ToString) -> Self {
        Cell::Ratio(num.to_string(), den.to_string())
    }

    pub fn opt_float(x: Option<f64>) -> Self {
        x.map(Cell::Float).unwrap_or(Cell::Empty)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(x) => x.clone(),
            Cell::Float(x) => sig9(*x),
            Cell::Floats(xs) => xs.iter().map(|&x| sig9(x)).collect::<Vec<_>>().join(" "),
            Cell::Ratio(p, q) => format!("{p}/{q}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => integer(x),
            Cell::Float(x) => float(*x),
            Cell::Floats(xs) => Value::Array(xs.iter().map(|&x| float(x)).collect()),
            Cell::Ratio(p, q) => {
                let mut m = Map::new();
                m.insert("numerator".into(), integer(p));
                m.insert("denominator".into(), integer(q));
                Value::Object(m)
            }
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

fn float(x: f64) -> Value {
    let s = sig9(x);
    match s.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) => Value::Number(n),
        None => Value::String(s),
    }
}

// integers beyond 64 bits stay strings so no digits are lost
fn integer(s: &str) -> Value {
    if let Ok(x) = s.parse::<i64>() {
        Value::from(x)
    } else if let Ok(x) = s.parse::<u64>() {
        Value::from(x)
    } else {
        Value::String(s.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn from_header_line(line: &str) -> Self {
        Self { headers: line.split(',').map(str::to_string).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> =
                        self.headers.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(&["a", "b", "c", "d"]);
        t.push(vec![Cell::int(3), Cell::Float(1.0 / 3.0), Cell::ratio(1, 15), Cell::Empty]);
        t.push(vec![Cell::int(4), Cell::Floats(vec![0.5, 2e-7]), Cell::text("x,y"), Cell::Bool(true)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c,d\n3,0.333333333,1/15,\n4,0.5 2e-07,\"x,y\",true\n");
        let j = t.to_json();
        assert_eq!(j[0]["b"].as_f64().unwrap(), 0.333333333);
        assert_eq!(j[0]["c"]["denominator"], 15);
        assert!(j[0]["d"].is_null());
        assert_eq!(j[1]["b"][1].as_f64().unwrap(), 2e-7);
    }

    #[test]
    fn big_integers_stay_exact() {
        assert_eq!(integer("123456789012345678901234567890"), Value::String("123456789012345678901234567890".into()));
    }
}
