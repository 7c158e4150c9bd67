use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::frame::random_gaussian_vector;
use super::{FrameData, FrameError, FrameMatrix, FrameMode};
use crate::subsets::{binomial, scan};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_NUMERIC_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SparkVerdict {
    FullSpark,
    Deficient,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparkOptions {
    /// Worker threads; 0 uses all cores.
    pub threads: usize,
    /// Minor cap; `None` picks the mode default.
    pub budget: Option<u64>,
    /// Threshold on column-normalized `|det|` in numeric mode.
    pub tol: f64,
}

impl Default for SparkOptions {
    fn default() -> Self {
        SparkOptions {
            threads: 0,
            budget: None,
            tol: DEFAULT_TOL,
        }
    }
}

impl SparkOptions {
    pub fn with_threads(threads: usize) -> Self {
        SparkOptions {
            threads,
            ..Self::default()
        }
    }

    fn budget_for(&self, mode: FrameMode) -> u64 {
        self.budget.unwrap_or(match mode {
            FrameMode::Exact => DEFAULT_EXACT_BUDGET,
            FrameMode::Numeric => DEFAULT_NUMERIC_BUDGET,
        })
    }
}

/// Outcome of checking every `d`-subset of frame vectors. All fields are a
/// function of the frame and options only, never of scheduling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparkCertificate {
    pub verdict: SparkVerdict,
    pub mode: FrameMode,
    /// Numeric threshold; absent in exact mode.
    pub tolerance: Option<f64>,
    pub minors_checked: u64,
    /// Smallest column-normalized `|det|` seen (numeric mode).
    pub min_abs_det: Option<f64>,
    /// Lexicographically smallest dependent `d`-subset of column indices.
    pub failing_subset: Option<Vec<usize>>,
    pub column_order: Vec<[usize; 2]>,
    pub h_enumeration: Option<Vec<u64>>,
    pub family: String,
    pub vector: String,
}

fn certificate(frame: &FrameMatrix, verdict: SparkVerdict, tolerance: Option<f64>) -> SparkCertificate {
    let p = frame.provenance();
    SparkCertificate {
        verdict,
        mode: frame.mode(),
        tolerance,
        minors_checked: 0,
        min_abs_det: None,
        failing_subset: None,
        column_order: p.column_order.clone(),
        h_enumeration: p.h_enumeration.clone(),
        family: p.family.clone(),
        vector: p.vector.clone(),
    }
}

fn require_budget(frame: &FrameMatrix, budget: u64) -> Result<u64, FrameError> {
    let required = binomial(frame.count() as u64, frame.dim() as u64);
    if required > budget {
        return Err(FrameError::BudgetExceeded { required, budget });
    }
    Ok(required)
}

/// Exact certificate: every `d × d` minor must be a nonzero polynomial in `t`
/// over `Q(ζ_N)`. Never returns `Inconclusive`.
pub fn full_spark_exact(frame: &FrameMatrix, opts: &SparkOptions) -> Result<SparkCertificate, FrameError> {
    let FrameData::Exact(m) = frame.data() else {
        return Err(FrameError::ModeMismatch("exact certification needs an exact frame".into()));
    };
    require_budget(frame, opts.budget_for(FrameMode::Exact))?;
    let d = m.rows();
    let rows: Vec<usize> = (0..d).collect();
    let out = scan(m.cols(), d, opts.threads, true, |cols| {
        let det = m.submatrix(&rows, cols).det()?;
        Ok::<_, FrameError>((!det.is_zero(), None))
    })?;
    let mut cert = certificate(
        frame,
        if out.first_failure.is_some() {
            SparkVerdict::Deficient
        } else {
            SparkVerdict::FullSpark
        },
        None,
    );
    cert.minors_checked = out.checked;
    cert.failing_subset = out.first_failure;
    Ok(cert)
}

fn normalized_columns(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut n = m.clone();
    for mut col in n.column_iter_mut() {
        let norm = col.norm();
        col /= Complex64::new(norm, 0.0);
    }
    n
}

/// `|det|` of the selected columns after each was scaled to unit norm.
pub fn normalized_abs_det(m: &DMatrix<Complex64>, cols: &[usize]) -> f64 {
    normalized_columns(&m.select_columns(cols)).determinant().norm()
}

/// Numeric certificate over column-normalized minors. A frame vector set is
/// reported `Deficient` once some normalized `|det| ≤ tol`; `min_abs_det`
/// covers the minors checked.
pub fn full_spark_numeric(frame: &FrameMatrix, opts: &SparkOptions) -> Result<SparkCertificate, FrameError> {
    let FrameData::Numeric(m) = frame.data() else {
        return Err(FrameError::ModeMismatch("numeric certification needs a numeric frame".into()));
    };
    require_budget(frame, opts.budget_for(FrameMode::Numeric))?;
    let normalized = normalized_columns(m);
    let tol = opts.tol;
    let out = scan(m.ncols(), m.nrows(), opts.threads, true, |cols| {
        let v = normalized.select_columns(cols).determinant().norm();
        Ok::<_, FrameError>((v > tol, Some(v)))
    })?;
    let mut cert = certificate(
        frame,
        if out.first_failure.is_some() {
            SparkVerdict::Deficient
        } else {
            SparkVerdict::FullSpark
        },
        Some(tol),
    );
    cert.minors_checked = out.checked;
    cert.min_abs_det = out.min_score;
    cert.failing_subset = out.first_failure;
    Ok(cert)
}

/// Dispatches on the frame's mode.
pub fn full_spark(frame: &FrameMatrix, opts: &SparkOptions) -> Result<SparkCertificate, FrameError> {
    match frame.mode() {
        FrameMode::Exact => full_spark_exact(frame, opts),
        FrameMode::Numeric => full_spark_numeric(frame, opts),
    }
}

/// Size of the smallest linearly dependent set of columns, computed exactly;
/// `M + 1` when all `M ≤ d` columns are independent.
pub fn spark(frame: &FrameMatrix, opts: &SparkOptions) -> Result<usize, FrameError> {
    let FrameData::Exact(m) = frame.data() else {
        return Err(FrameError::ModeMismatch("spark is computed on exact frames".into()));
    };
    let (d, count) = (m.rows(), m.cols());
    let top = d.min(count);
    let required = (1..=top as u64)
        .map(|k| binomial(count as u64, k))
        .fold(0u64, u64::saturating_add);
    let budget = opts.budget_for(FrameMode::Exact);
    if required > budget {
        return Err(FrameError::BudgetExceeded { required, budget });
    }
    let rows: Vec<usize> = (0..d).collect();
    for k in 1..=top {
        let out = scan(count, k, opts.threads, true, |cols| {
            let sub = m.submatrix(&rows, cols);
            Ok::<_, FrameError>((sub.rank()? == k, None))
        })?;
        if out.first_failure.is_some() {
            return Ok(k);
        }
    }
    Ok(top + 1)
}

/// Largest number of near-zero frame coefficients `|⟨ψ, v_k⟩| < tol ‖ψ‖ ‖v_k‖`
/// over `trials` seeded Gaussian vectors `ψ`. Full spark frames give at most
/// `d − 1`.
pub fn zero_count_check(frame: &FrameMatrix, trials: usize, seed: u64, tol: f64) -> usize {
    let m = frame.to_numeric_matrix();
    let d = m.nrows();
    (0..trials as u64)
        .map(|i| {
            let psi = random_gaussian_vector(d, seed.wrapping_add(i));
            zero_count(&m, &psi, tol)
        })
        .max()
        .unwrap_or(0)
}

/// Number of near-zero coefficients of `psi` against the columns of `m`.
pub fn zero_count(m: &DMatrix<Complex64>, psi: &[Complex64], tol: f64) -> usize {
    let psi = DVector::from_column_slice(psi);
    let pn = psi.norm();
    m.column_iter()
        .filter(|v| psi.dotc(v).norm() < tol * pn * v.norm())
        .count()
}
