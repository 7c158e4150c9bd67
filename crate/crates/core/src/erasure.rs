//! Erasure channel: transmit frame coefficients, lose some of them, and
//! recover the vector from `d` survivors.

use log::debug;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::framecore::{analysis, random_gaussian_vector, FrameError, FrameMatrix};
use crate::subsets::with_threads;

/// Pivot magnitude, relative to the largest entry, below which the survivor
/// system is declared singular.
pub const SINGULAR_PIVOT: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ErasureError {
    #[error("only {got} coefficients survived; {needed} are required")]
    TooFewSurvivors { needed: usize, got: usize },
    #[error("the frame vectors at {indices:?} are linearly dependent")]
    Singular { indices: Vec<usize> },
    #[error("erasure pattern: {0}")]
    Pattern(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// Sorted set of erased coefficient indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasurePattern {
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(count: usize, erased: &[usize]) -> Result<Self, ErasureError> {
        let mut e = erased.to_vec();
        e.sort_unstable();
        e.dedup();
        if let Some(&bad) = e.iter().find(|&&i| i >= count) {
            return Err(ErasureError::Pattern(format!("index {bad} out of range for {count} coefficients")));
        }
        Ok(ErasurePattern { erased: e })
    }

    pub fn none() -> Self {
        ErasurePattern { erased: Vec::new() }
    }

    /// Erases everything except `keep`.
    pub fn keeping(count: usize, keep: &[usize]) -> Result<Self, ErasureError> {
        let erased: Vec<usize> = (0..count).filter(|i| !keep.contains(i)).collect();
        Self::new(count, &erased)
    }

    /// `size` distinct indices drawn uniformly from `0..count`.
    pub fn random(count: usize, size: usize, rng: &mut ChaCha8Rng) -> Result<Self, ErasureError> {
        if size > count {
            return Err(ErasureError::Pattern(format!("cannot erase {size} of {count}")));
        }
        Self::new(count, &sample(rng, count, size).into_vec())
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn contains(&self, i: usize) -> bool {
        self.erased.binary_search(&i).is_ok()
    }
}

/// `(k, ⟨v, v_k⟩)` for every index not erased.
pub fn transmit(frame: &FrameMatrix, v: &[Complex64], pattern: &ErasurePattern) -> Result<Vec<(usize, Complex64)>, ErasureError> {
    let coeffs = analysis(frame, v)?;
    Ok(coeffs
        .into_iter()
        .enumerate()
        .filter(|(k, _)| !pattern.contains(*k))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub vector: Vec<Complex64>,
    /// Frame indices used for the solve.
    pub used: Vec<usize>,
    /// `‖A x − b‖ / ‖b‖` of the survivor system.
    pub residual: f64,
    /// 2-norm condition number of the survivor system.
    pub condition: f64,
}

/// Solves `⟨x, v_k⟩ = c_k` on the first `d` survivors by partial-pivot LU.
pub fn reconstruct(frame: &FrameMatrix, survivors: &[(usize, Complex64)]) -> Result<Reconstruction, ErasureError> {
    let d = frame.dim();
    if survivors.len() < d {
        return Err(ErasureError::TooFewSurvivors { needed: d, got: survivors.len() });
    }
    let m = frame.to_numeric_matrix();
    let chosen = &survivors[..d];
    let used: Vec<usize> = chosen.iter().map(|&(k, _)| k).collect();
    // row k of the system is v_k*, so that (A x)_k = ⟨x, v_k⟩
    let a = DMatrix::from_fn(d, d, |r, c| m[(c, used[r])].conj());
    let b = DVector::from_iterator(d, chosen.iter().map(|&(_, c)| c));
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lu = a.clone().lu();
    let min_pivot = lu.u().diagonal().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if min_pivot.is_nan() || min_pivot <= SINGULAR_PIVOT * scale {
        return Err(ErasureError::Singular { indices: used });
    }
    let x = lu.solve(&b).ok_or_else(|| ErasureError::Singular { indices: used.clone() })?;
    let bn = b.norm();
    let residual = if bn > 0.0 { (&a * &x - &b).norm() / bn } else { (&a * &x).norm() };
    let sv = a.singular_values();
    let condition = sv.max() / sv.min();
    debug!("reconstruct from {used:?}: residual {residual:.3e}, condition {condition:.3e}");
    Ok(Reconstruction {
        vector: x.iter().copied().collect(),
        used,
        residual,
        condition,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trials: usize,
    pub erasure_count: usize,
    pub seed: u64,
    /// Trials whose survivor system was singular.
    pub failures: usize,
    /// Worst `‖x − v‖ / ‖v‖` among successful trials.
    pub max_relative_error: f64,
    pub max_condition: f64,
}

/// Runs `trials` seeded trials, each with a random vector and a random
/// pattern of `erasure_count` erasures. Patterns and vectors are drawn
/// sequentially from the seed, then evaluated in parallel.
pub fn erasure_trial(
    frame: &FrameMatrix,
    trials: usize,
    erasure_count: usize,
    seed: u64,
    threads: usize,
) -> Result<TrialReport, ErasureError> {
    let (d, count) = (frame.dim(), frame.count());
    if erasure_count + d > count {
        return Err(ErasureError::Pattern(format!(
            "erasing {erasure_count} of {count} leaves fewer than {d} coefficients"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plans = Vec::with_capacity(trials);
    for i in 0..trials as u64 {
        let pattern = ErasurePattern::random(count, erasure_count, &mut rng)?;
        let v = random_gaussian_vector(d, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i));
        plans.push((pattern, v));
    }
    let results: Vec<Result<Option<(f64, f64)>, ErasureError>> = with_threads(threads, || {
        plans
            .par_iter()
            .map(|(pattern, v)| {
                let survivors = transmit(frame, v, pattern)?;
                match reconstruct(frame, &survivors) {
                    Ok(r) => {
                        let err: f64 = r.vector.iter().zip(v).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                        Ok(Some((err / norm, r.condition)))
                    }
                    Err(ErasureError::Singular { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect()
    });
    let mut report = TrialReport {
        trials,
        erasure_count,
        seed,
        failures: 0,
        max_relative_error: 0.0,
        max_condition: 0.0,
    };
    for r in results {
        match r? {
            Some((err, cond)) => {
                report.max_relative_error = report.max_relative_error.max(err);
                report.max_condition = report.max_condition.max(cond);
            }
            None => report.failures += 1,
        }
    }
    Ok(report)
}
