use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// T samples of an n-dimensional random vector, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleMatrix {
    pub t: usize,
    pub n: usize,
    values: Vec<f64>,
}

impl SampleMatrix {
    pub fn new(t: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        if t == 0 || n == 0 {
            return Err(Error::PreconditionFailed("sample matrix must be nonempty".into()));
        }
        if values.len() != t * n {
            return Err(Error::PreconditionFailed(format!(
                "{} values for {t} samples of dimension {n}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::PreconditionFailed(format!(
                "non-finite entry in sample {}",
                pos / n + 1
            )));
        }
        Ok(SampleMatrix { t, n, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::RaggedRows {
                line: bad as u64 + 1,
                expected: n,
                found: rows[bad].len(),
            });
        }
        SampleMatrix::new(rows.len(), n, rows.concat())
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.values[s * self.n..(s + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n)
    }
}

pub fn read_samples(path: impl AsRef<Path>) -> Result<SampleMatrix> {
    read_samples_from(File::open(path)?)
}

/// Parses comma-separated samples. A first row that does not parse as
/// numbers is taken as a header.
pub fn read_samples_from(reader: impl Read) -> Result<SampleMatrix> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut values = Vec::new();
    let mut n = None;
    let mut t = 0;
    for (i, record) in csv.records().enumerate() {
        let record = record.map_err(|e| Error::ParseError {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(Error::ParseError {
                    line,
                    message: e.to_string(),
                })
            }
        };
        if let Some(bad) = row.iter().find(|x| !x.is_finite()) {
            return Err(Error::ParseError {
                line,
                message: format!("non-finite value {bad}"),
            });
        }
        let expected = *n.get_or_insert(row.len());
        if row.len() != expected {
            return Err(Error::RaggedRows {
                line,
                expected,
                found: row.len(),
            });
        }
        values.extend(row);
        t += 1;
    }
    match n {
        Some(n) => SampleMatrix::new(t, n, values),
        None => Err(Error::ParseError {
            line: 0,
            message: "no samples".into(),
        }),
    }
}
