//! CSV input and output with round-trip-exact floats.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};

/// Seventeen significant digits, enough to recover every finite `f64` bit for bit.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A column of a table: numbers or labels.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_f64(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Rows with a fixed header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    /// An array of objects keyed by the header.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let v = match c {
                            Cell::Num(x) => serde_json::Number::from_f64(*x)
                                .map(serde_json::Value::Number)
                                .unwrap_or_else(|| serde_json::Value::String(x.to_string())),
                            Cell::Text(s) => serde_json::Value::String(s.clone()),
                        };
                        (h.clone(), v)
                    })
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Numeric column by header name; text cells are an error.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name).with_context(|| format!("no column {name}"))?;
        self.rows
            .iter()
            .map(|r| match &r[j] {
                Cell::Num(v) => Ok(*v),
                Cell::Text(s) => bail!("column {name} holds text {s:?}"),
            })
            .collect()
    }
}

/// Reads a CSV with a header; cells that parse as `f64` become numbers.
pub fn read_csv<R: Read>(input: R) -> Result<Table> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push(rec.iter().map(|s| s.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(s.into()))).collect());
    }
    Ok(Table { header, rows })
}

/// `x, u0, u1` columns of tabulated initial data.
pub fn read_initial_data<R: Read>(input: R) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let t = read_csv(input)?;
    Ok((t.column("x")?, t.column("u0")?, t.column("u1")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table_round_trip() {
        let mut t = Table::new(&["x", "u", "provenance"]);
        t.push(vec![0.1.into(), (1.0 / 3.0).into(), "exact_soliton".into()]);
        t.push(vec![(-2.5e-300).into(), f64::MAX.into(), "residual".into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), t);
    }

    #[test]
    fn missing_column_is_reported() {
        let err = read_initial_data("x,u0\n0,1\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("u1"));
    }

    #[test]
    fn json_keys_follow_header() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1.5.into(), "z".into()]);
        assert_eq!(t.to_json()[0]["a"], 1.5);
        assert_eq!(t.to_json()[0]["b"], "z");
    }

    proptest! {
        #[test]
        fn formatted_floats_round_trip(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = format_f64(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
