//! CSV rendering of convergence reports.
//!
//! Columns, in order: `n, sum, reference, signed_error, abs_error,
//! max_d_over_n, K_over_n`. Reals are written with 17 significant digits,
//! which is enough to read every double back bit for bit.

use std::io::{Read, Write};

use crate::analysis::ConvergenceReport;

pub const HEADER: [&str; 7] = [
    "n",
    "sum",
    "reference",
    "signed_error",
    "abs_error",
    "max_d_over_n",
    "K_over_n",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub n: usize,
    pub sum: f64,
    pub reference: f64,
    pub signed_error: f64,
    pub abs_error: f64,
    pub max_d_over_n: f64,
    pub k_over_n: f64,
}

pub fn rows(report: &ConvergenceReport) -> Vec<CsvRow> {
    let adm = &report.admissibility;
    report
        .rows
        .iter()
        .zip(adm.max_d_over_n.iter().zip(&adm.k_over_n))
        .map(|(r, (&d, &k))| CsvRow {
            n: r.n,
            sum: r.value,
            reference: report.reference,
            signed_error: r.signed_error,
            abs_error: r.abs_error,
            max_d_over_n: d,
            k_over_n: k,
        })
        .collect()
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(report: &ConvergenceReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows(report) {
        w.write_record([
            row.n.to_string(),
            real(row.sum),
            real(row.reference),
            real(row.signed_error),
            real(row.abs_error),
            real(row.max_d_over_n),
            real(row.k_over_n),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: cannot parse `{text}`")]
    Value { row: usize, text: String },
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, ReadError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(ReadError::Header(header));
    }
    let mut out = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let field = |j: usize| -> Result<f64, ReadError> {
            let text = &record[j];
            text.parse().map_err(|_| ReadError::Value {
                row: i + 1,
                text: text.to_string(),
            })
        };
        out.push(CsvRow {
            n: record[0].parse().map_err(|_| ReadError::Value {
                row: i + 1,
                text: record[0].to_string(),
            })?,
            sum: field(1)?,
            reference: field(2)?,
            signed_error: field(3)?,
            abs_error: field(4)?,
            max_d_over_n: field(5)?,
            k_over_n: field(6)?,
        });
    }
    Ok(out)
}
