//! CSV tables preceded by a `# `-prefixed manifest block.

use std::io::{self, Write};

use crate::manifest::RunManifest;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Self::Num(x) => format_number(*x),
            Self::Flag(b) => b.to_string(),
            Self::Text(s) => s.clone(),
        }
    }
}

/// Shortest round-trip scientific notation; non-finite values as `nan`/`inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&x| Cell::Num(x)).collect());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[i] {
                    Cell::Num(x) => *x,
                    _ => f64::NAN,
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, out: W, manifest: &RunManifest) -> io::Result<()> {
        let mut out = out;
        manifest.write_header(&mut out)?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self, manifest: &RunManifest) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, manifest).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}

/// Reads a table written by [`Table::write_csv`], skipping the manifest block.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), csv::Error> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec?.iter().map(String::from).collect());
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.8e10, 5e-324, f64::MAX, 0.0] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn csv_body_parses_back() {
        let mut t = Table::new(["x", "y", "flag"]);
        t.push(vec![Cell::Num(0.1), Cell::Num(f64::NAN), Cell::Flag(true)]);
        t.push(vec![Cell::Num(1.0 / 3.0), Cell::Num(2.0), Cell::Flag(false)]);
        let m = RunManifest::new("test");
        let text = t.to_csv_string(&m);
        assert!(!text.contains('\r'));
        let (h, rows) = read_csv(&text).unwrap();
        assert_eq!(h, ["x", "y", "flag"]);
        assert_eq!(rows[1][0].parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(rows[0][1], "nan");
    }
}
