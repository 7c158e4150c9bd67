//! Frame and certificate files.
//!
//! Frames are JSON with one list of entries per column. Numeric entries are
//! `{"re": .., "im": ..}`; exact entries are `{"terms": [{"t_exp": e,
//! "coeffs": ["p/q", ..]}]}`, the coefficients of `t^e` in the power basis of
//! `Q(ζ_N)`, so exact frames round-trip without loss. Numeric frames can also
//! be written as CSV with header `col,row,re,im`.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{CycPolynomial, Cyclotomic, ExactMatrix, Rational};
use crate::framecore::{FrameData, FrameError, FrameMatrix, FrameMode, Provenance, SparkCertificate};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed frame file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub t_exp: u64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryFile {
    Numeric { re: f64, im: f64 },
    Exact { terms: Vec<TermFile> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    pub count: usize,
    pub mode: FrameMode,
    pub ambient_order: Option<u32>,
    pub provenance: Provenance,
    pub columns: Vec<Vec<EntryFile>>,
}

fn exact_entry(p: &CycPolynomial) -> EntryFile {
    EntryFile::Exact {
        terms: p
            .terms()
            .map(|(e, c)| TermFile {
                t_exp: e,
                coeffs: c.coeffs().iter().map(Rational::to_string).collect(),
            })
            .collect(),
    }
}

fn parse_exact(entry: &EntryFile, order: u32) -> Result<CycPolynomial, IoError> {
    let EntryFile::Exact { terms } = entry else {
        return Err(IoError::Malformed("numeric entry in an exact frame".into()));
    };
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let coeffs = t
            .coeffs
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Malformed(e.to_string()))?;
        parsed.push((t.t_exp, Cyclotomic::from_coeffs(order, &coeffs)));
    }
    CycPolynomial::from_terms(order, parsed).map_err(|e| IoError::Malformed(e.to_string()))
}

impl FrameFile {
    pub fn from_frame(frame: &FrameMatrix) -> Self {
        let columns = match frame.data() {
            FrameData::Exact(m) => (0..m.cols())
                .map(|c| (0..m.rows()).map(|r| exact_entry(m.get(r, c))).collect())
                .collect(),
            FrameData::Numeric(m) => m
                .column_iter()
                .map(|col| col.iter().map(|z| EntryFile::Numeric { re: z.re, im: z.im }).collect())
                .collect(),
        };
        FrameFile {
            dim: frame.dim(),
            count: frame.count(),
            mode: frame.mode(),
            ambient_order: frame.ambient_order(),
            provenance: frame.provenance().clone(),
            columns,
        }
    }

    pub fn to_frame(&self) -> Result<FrameMatrix, IoError> {
        if self.columns.len() != self.count {
            return Err(IoError::Malformed(format!(
                "count is {} but {} columns are present",
                self.count,
                self.columns.len()
            )));
        }
        if let Some((i, _)) = self.columns.iter().enumerate().find(|(_, c)| c.len() != self.dim) {
            return Err(IoError::Malformed(format!("column {i} does not have {} entries", self.dim)));
        }
        match self.mode {
            FrameMode::Exact => {
                let order = self
                    .ambient_order
                    .ok_or_else(|| IoError::Malformed("exact frame without ambient_order".into()))?;
                if order == 0 {
                    return Err(IoError::Malformed("ambient_order must be positive".into()));
                }
                let mut cells = Vec::with_capacity(self.dim * self.count);
                for r in 0..self.dim {
                    for c in 0..self.count {
                        cells.push(parse_exact(&self.columns[c][r], order)?);
                    }
                }
                let m = ExactMatrix::new(self.dim, self.count, cells).map_err(|e| IoError::Malformed(e.to_string()))?;
                Ok(FrameMatrix::exact(m, self.provenance.clone())?)
            }
            FrameMode::Numeric => {
                let mut values = Vec::with_capacity(self.dim * self.count);
                for col in &self.columns {
                    for e in col {
                        match e {
                            EntryFile::Numeric { re, im } => values.push(Complex64::new(*re, *im)),
                            EntryFile::Exact { .. } => {
                                return Err(IoError::Malformed("exact entry in a numeric frame".into()))
                            }
                        }
                    }
                }
                let m = DMatrix::from_column_slice(self.dim, self.count, &values);
                Ok(FrameMatrix::numeric(m, self.provenance.clone())?)
            }
        }
    }
}

pub fn frame_to_json(frame: &FrameMatrix) -> String {
    serde_json::to_string_pretty(&FrameFile::from_frame(frame)).expect("frame serializes")
}

pub fn frame_from_json(s: &str) -> Result<FrameMatrix, IoError> {
    let file: FrameFile = serde_json::from_str(s)?;
    file.to_frame()
}

#[derive(Serialize)]
struct CsvRow {
    col: usize,
    row: usize,
    re: f64,
    im: f64,
}

/// Writes `col,row,re,im` records, rows varying fastest within each column.
/// Exact frames are evaluated numerically first.
pub fn write_frame_csv(frame: &FrameMatrix, out: impl Write) -> Result<(), IoError> {
    let m = frame.to_numeric_matrix();
    let mut w = csv::Writer::from_writer(out);
    for (col, column) in m.column_iter().enumerate() {
        for (row, z) in column.iter().enumerate() {
            w.serialize(CsvRow { col, row, re: z.re, im: z.im })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// A certificate with run metadata. The flattened [`SparkCertificate`]
/// depends only on the input; the remaining fields describe the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    #[serde(flatten)]
    pub certificate: SparkCertificate,
    pub tool_version: String,
    pub threads: usize,
    pub elapsed_ms: u64,
}

/// Canonical JSON of the input-determined part of a certificate.
pub fn certificate_payload_json(cert: &SparkCertificate) -> String {
    serde_json::to_string(cert).expect("certificate serializes")
}
