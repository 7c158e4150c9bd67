//! Structural conditions for full spark: nonvanishing consecutive-row minors,
//! the all-minors property of prime-order root-of-unity matrices, uniform
//! distribution of DFT row sets over the divisors of N, and tightness of the
//! columns of a diagonal-entry matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{CycPolynomial, Cyclotomic, ExactError, ExactMatrix, Rational};
use crate::groups::is_prime;
use crate::subsets::{binomial, first_failing_index, next_subset, subsets, unrank};

/// Default cap on the number of exact minors a check may evaluate.
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("{required} minors exceed the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("entry ({0}, {1}) depends on t; tightness needs constant entries")]
    NonConstantEntry(usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Worker threads; 0 uses all cores.
    pub threads: usize,
    pub budget: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            threads: 0,
            budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

/// A vanishing minor, given by ascending row and column indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub holds: bool,
    pub minors_checked: u64,
    pub witness: Option<MinorWitness>,
}

fn check_budget(required: u64, budget: u64) -> Result<(), CriteriaError> {
    if required > budget {
        Err(CriteriaError::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// Cyclic row intervals of length `len` in a `d`-row matrix, each sorted.
/// The full interval appears once.
pub fn cyclic_intervals(d: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 || len > d {
        return Vec::new();
    }
    if len == d {
        return vec![(0..d).collect()];
    }
    (0..d)
        .map(|start| {
            let mut rows: Vec<usize> = (start..start + len).map(|r| r % d).collect();
            rows.sort_unstable();
            rows
        })
        .collect()
}

/// Scans groups of row sets against all column subsets of the same size, in
/// order: size ascending, then row set, then lexicographic column subset.
fn scan_minors(
    m: &ExactMatrix,
    row_sets_by_size: &[(usize, Vec<Vec<usize>>)],
    opts: &CheckOptions,
    preceding: u64,
) -> Result<MinorReport, CriteriaError> {
    let cols = m.cols();
    let required = preceding
        + row_sets_by_size
            .iter()
            .map(|(l, rs)| (rs.len() as u64).saturating_mul(binomial(cols as u64, *l as u64)))
            .fold(0u64, u64::saturating_add);
    check_budget(required, opts.budget)?;
    let mut checked = preceding;
    for (l, row_sets) in row_sets_by_size {
        let l = *l;
        let per = binomial(cols as u64, l as u64) as usize;
        let total = row_sets.len() * per;
        let pick = |i: usize| (&row_sets[i / per], unrank(cols, l, (i % per) as u64));
        let fail = first_failing_index(total, opts.threads, |i| {
            let (rows, cs) = pick(i);
            Ok::<bool, CriteriaError>(!m.submatrix(rows, &cs).det()?.is_zero())
        })?;
        if let Some(i) = fail {
            let (rows, cs) = pick(i);
            return Ok(MinorReport {
                holds: false,
                minors_checked: checked + i as u64 + 1,
                witness: Some(MinorWitness {
                    rows: rows.clone(),
                    cols: cs,
                }),
            });
        }
        checked += total as u64;
    }
    Ok(MinorReport {
        holds: true,
        minors_checked: checked,
        witness: None,
    })
}

/// True iff every minor on cyclically consecutive rows (wrapping from the
/// bottom row to the top) and any equal number of columns is nonzero.
pub fn consecutive_minor_check(m: &ExactMatrix, opts: &CheckOptions) -> Result<MinorReport, CriteriaError> {
    let d = m.rows();
    let groups: Vec<(usize, Vec<Vec<usize>>)> = (1..=d.min(m.cols()))
        .map(|l| (l, cyclic_intervals(d, l)))
        .collect();
    scan_minors(m, &groups, opts, 0)
}

/// `(ζ_N^{a_j b_k})` for exponent lists `a` (rows) and `b` (columns).
pub fn root_power_matrix(n: u32, a_exps: &[u64], b_exps: &[u64]) -> ExactMatrix {
    ExactMatrix::from_fn(a_exps.len(), b_exps.len(), |j, k| {
        let e = (a_exps[j] % n as u64) * (b_exps[k] % n as u64) % n as u64;
        CycPolynomial::constant(Cyclotomic::root_of_unity(n, e as i64))
    })
    .expect("uniform order")
}

fn pairwise_incongruent(v: &[u64], n: u64) -> bool {
    let mut r: Vec<u64> = v.iter().map(|x| x % n).collect();
    r.sort_unstable();
    r.windows(2).all(|w| w[0] != w[1])
}

/// Verifies that every square submatrix of `(ζ_p^{a_j b_k})` is nonsingular.
/// The count includes the empty minor, so an `n × m` matrix has `C(n+m, n)`.
pub fn evans_all_minors_check(
    n_prime: u64,
    a_exps: &[u64],
    b_exps: &[u64],
    opts: &CheckOptions,
) -> Result<MinorReport, CriteriaError> {
    if !is_prime(n_prime) {
        return Err(CriteriaError::Precondition(format!("{n_prime} is not prime")));
    }
    if !pairwise_incongruent(a_exps, n_prime) || !pairwise_incongruent(b_exps, n_prime) {
        return Err(CriteriaError::Precondition(format!(
            "exponents must be pairwise incongruent mod {n_prime}"
        )));
    }
    let m = root_power_matrix(n_prime as u32, a_exps, b_exps);
    let rows = m.rows();
    let groups: Vec<(usize, Vec<Vec<usize>>)> = (1..=rows.min(m.cols()))
        .map(|l| (l, subsets(rows, l).collect()))
        .collect();
    // the empty minor is 1
    scan_minors(&m, &groups, opts, 1)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// For every divisor `d` of `N`, the residues of `s` mod `d` fill each of
/// the `d` classes with `⌊|s|/d⌋` or `⌈|s|/d⌉` elements.
pub fn uniform_distribution_check(n: u64, s: &[u64]) -> bool {
    let mut set: Vec<u64> = s.iter().map(|x| x % n).collect();
    set.sort_unstable();
    set.dedup();
    let size = set.len() as u64;
    divisors(n).into_iter().all(|d| {
        let mut counts = vec![0u64; d as usize];
        for &x in &set {
            counts[(x % d) as usize] += 1;
        }
        let (lo, hi) = (size / d, size.div_ceil(d));
        counts.iter().all(|&c| c == lo || c == hi)
    })
}

/// Element of `Z[x]/(x^N − 1)` with small integer coefficients; the image of
/// `x` is `ζ_N`. Multiplication by `ζ^k` is a rotation.
fn rotate_add(acc: &mut [i64], src: &[i64], k: usize, sign: i64) {
    let n = acc.len();
    for (i, &c) in src.iter().enumerate() {
        if c != 0 {
            acc[(i + k) % n] += sign * c;
        }
    }
}

fn is_zero_in_field(n: u32, coeffs: &[i64]) -> bool {
    let q: Vec<Rational> = coeffs.iter().map(|&c| Rational::from(c)).collect();
    Cyclotomic::from_coeffs(n, &q).is_zero()
}

/// All `|S|×|S|` minors of the `N×N` DFT rows indexed by `s`, by Laplace
/// expansion along the last row over column subsets. Entries are powers of
/// `ζ_N`, so intermediate values stay in `Z[x]/(x^N − 1)`.
fn dft_row_minors_nonzero(n: usize, rows: &[usize]) -> bool {
    let l = rows.len();
    if l == 0 {
        return true;
    }
    // level i holds det(rows[..i] × C) for every i-subset C, keyed by bitmask
    let mut level: std::collections::HashMap<u64, Vec<i64>> = std::collections::HashMap::new();
    let mut unit = vec![0i64; n];
    unit[0] = 1;
    level.insert(0, unit);
    for (i, &r) in rows.iter().enumerate() {
        let mut next = std::collections::HashMap::new();
        let mut c: Vec<usize> = (0..=i).collect();
        loop {
            let mask: u64 = c.iter().map(|&x| 1u64 << x).sum();
            let mut acc = vec![0i64; n];
            for (pos, &col) in c.iter().enumerate() {
                let sub = level[&(mask & !(1u64 << col))].as_slice();
                let sign = if (i + pos) % 2 == 0 { 1 } else { -1 };
                rotate_add(&mut acc, sub, r * col % n, sign);
            }
            next.insert(mask, acc);
            if !next_subset(&mut c, n) {
                break;
            }
        }
        level = next;
    }
    level.values().all(|v| !is_zero_in_field(n as u32, v))
}

/// Brute-force check that every `|s|×|s|` minor of the rows `s` of the
/// `N×N` DFT matrix `(ζ_N^{jk})` is nonzero.
pub fn dft_submatrix_full_spark(n: u64, s: &[u64], opts: &CheckOptions) -> Result<bool, CriteriaError> {
    if n == 0 || n > 63 {
        return Err(CriteriaError::Precondition(format!("N = {n} out of range 1..=63")));
    }
    let mut rows: Vec<usize> = s.iter().map(|&x| (x % n) as usize).collect();
    rows.sort_unstable();
    rows.dedup();
    let required = (0..=rows.len() as u64).map(|i| binomial(n, i)).fold(0u64, u64::saturating_add);
    check_budget(required, opts.budget)?;
    Ok(dft_row_minors_nonzero(n as usize, &rows))
}

/// True iff the rows of `m` are pairwise orthogonal with equal norms, computed
/// exactly with conjugation `ζ ↦ ζ^{−1}`. Equivalently `m m*` is scalar.
pub fn tight_columns_check(m: &ExactMatrix) -> Result<bool, CriteriaError> {
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(m.get(i, j).as_constant().ok_or(CriteriaError::NonConstantEntry(i, j))?);
        }
        rows.push(row);
    }
    let inner = |a: &[Cyclotomic], b: &[Cyclotomic]| -> Result<Cyclotomic, ExactError> {
        let mut acc = Cyclotomic::zero(m.order());
        for (x, y) in a.iter().zip(b) {
            acc = acc.checked_add(&x.checked_mul(&y.conj())?)?;
        }
        Ok(acc)
    };
    let norm0 = match rows.first() {
        Some(r) => inner(r, r)?,
        None => return Ok(true),
    };
    for i in 0..rows.len() {
        if inner(&rows[i], &rows[i])? != norm0 {
            return Ok(false);
        }
        for j in i + 1..rows.len() {
            if !inner(&rows[i], &rows[j])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Numeric image of a constant exact matrix, row-major.
pub fn numeric_rows(m: &ExactMatrix) -> Option<Vec<Vec<Complex64>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).as_constant().map(|c| c.to_complex()))
                .collect()
        })
        .collect()
}
