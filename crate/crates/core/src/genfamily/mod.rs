//! Group-free families `{ D_λ T^k v }` with `D_λ = diag(t^{λ ξ_j})` and `T` the
//! cyclic shift, their generalized Vandermonde minors, and exact nonvanishing
//! certificates.
//!
//! Each minor `P_S(t)` factors as a product of positive terms times a Schur
//! polynomial with nonnegative integer coefficients, so `P_S(2) > 0` proves
//! `P_S` is a nonzero polynomial, hence nonzero at every transcendental `t`.

mod schur;

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use schur::{schur_evaluate, schur_tableaux, SchurPartition};

use crate::criteria::{consecutive_minor_check, CheckOptions, CriteriaError, MinorWitness};
use crate::exactalg::{unit_power, CycPolynomial, Cyclotomic, ExactError, ExactMatrix, Rational};
use crate::subsets::{binomial, first_failing_index, unrank};

/// Numeric stand-in for a transcendental `τ` when a frame is evaluated in
/// floating point.
pub const DEFAULT_TAU: f64 = SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<u64>),
    #[error("unsupported tau '{0}': only rational p/q or 'transcendental' are decidable")]
    UnsupportedTau(String),
    #[error("minor selection: {0}")]
    Selection(String),
    #[error("operation requires a transcendental tau")]
    RequiresTranscendental,
    #[error("{required} minors exceed the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl From<CriteriaError> for FamilyError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::BudgetExceeded { required, budget } => FamilyError::BudgetExceeded { required, budget },
            CriteriaError::Exact(x) => FamilyError::Exact(x),
            other => FamilyError::InvalidFamily(other.to_string()),
        }
    }
}

/// How `t = e^{2πiτ}` is specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tau {
    /// `t` is treated as an indeterminate.
    Transcendental,
    /// `t = ζ_q^p`, stored in lowest terms with `q ≥ 1`.
    Rational { p: i64, q: u64 },
}

impl Tau {
    pub fn rational(p: i64, q: u64) -> Result<Self, FamilyError> {
        if q == 0 {
            return Err(FamilyError::UnsupportedTau(format!("{p}/0")));
        }
        let g = p.unsigned_abs().gcd(&q).max(1);
        Ok(Tau::Rational {
            p: p / g as i64,
            q: q / g,
        })
    }
}

impl FromStr for Tau {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("transcendental") {
            return Ok(Tau::Transcendental);
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        match (p.parse::<i64>(), q.parse::<u64>()) {
            (Ok(p), Ok(q)) => Tau::rational(p, q),
            _ => Err(FamilyError::UnsupportedTau(s.to_string())),
        }
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::Transcendental => write!(f, "transcendental"),
            Tau::Rational { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

/// Exponent lists `ξ_0 < … < ξ_{d−1}` and `λ_0 < … < λ_{m−1}`; entry `(j, k)`
/// of the family matrix is `t^{λ_k ξ_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFamily {
    xi: Vec<u64>,
    lambdas: Vec<u64>,
    tau: Tau,
    numeric_tau: f64,
}

fn strictly_increasing(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl ExponentFamily {
    pub fn new(xi: Vec<u64>, lambdas: Vec<u64>, tau: Tau) -> Result<Self, FamilyError> {
        if xi.is_empty() || lambdas.is_empty() {
            return Err(FamilyError::InvalidFamily("xi and lambda lists must be nonempty".into()));
        }
        if !strictly_increasing(&xi) {
            return Err(FamilyError::InvalidFamily(format!("xi {xi:?} is not strictly increasing")));
        }
        if !strictly_increasing(&lambdas) {
            return Err(FamilyError::InvalidFamily(format!(
                "lambda {lambdas:?} is not strictly increasing"
            )));
        }
        Ok(ExponentFamily {
            xi,
            lambdas,
            tau,
            numeric_tau: DEFAULT_TAU,
        })
    }

    /// Replaces the numeric value used for a transcendental `τ`.
    pub fn with_numeric_tau(mut self, tau: f64) -> Self {
        self.numeric_tau = tau;
        self
    }

    pub fn xi(&self) -> &[u64] {
        &self.xi
    }

    pub fn lambdas(&self) -> &[u64] {
        &self.lambdas
    }

    pub fn tau(&self) -> Tau {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn count(&self) -> usize {
        self.lambdas.len()
    }

    /// `τ` as a real number: the rational value or the transcendental stand-in.
    pub fn numeric_tau(&self) -> f64 {
        match self.tau {
            Tau::Transcendental => self.numeric_tau,
            Tau::Rational { p, q } => p as f64 / q as f64,
        }
    }

    /// Cyclotomic order of the exact entries (1 when `t` is an indeterminate).
    pub fn ambient_order(&self) -> u32 {
        match self.tau {
            Tau::Transcendental => 1,
            Tau::Rational { q, .. } => u32::try_from(q).expect("tau denominator fits u32"),
        }
    }

    /// `λ_k ξ_j`.
    pub fn exponent(&self, j: usize, k: usize) -> u64 {
        self.lambdas[k] * self.xi[j]
    }

    /// Exact entry `t^{e}`: a monomial in `t`, or `ζ_q^{p e}` for rational `τ`.
    pub fn power(&self, e: u64) -> CycPolynomial {
        match self.tau {
            Tau::Transcendental => CycPolynomial::monomial(Cyclotomic::one(1), e),
            Tau::Rational { p, q } => {
                let r = (p as i128 * e as i128).rem_euclid(q as i128) as i64;
                CycPolynomial::constant(Cyclotomic::root_of_unity(q as u32, r))
            }
        }
    }

    /// Numeric `e^{2πiτe}`; rational `τ` reduces the angle with integers.
    pub fn power_numeric(&self, e: u64) -> Complex64 {
        match self.tau {
            Tau::Transcendental => unit_power(self.numeric_tau, e),
            Tau::Rational { p, q } => {
                let r = (p as i128 * e as i128).rem_euclid(q as i128) as f64;
                Complex64::from_polar(1.0, std::f64::consts::TAU * r / q as f64)
            }
        }
    }

    pub fn describe(&self) -> String {
        format!("family xi={:?} lambda={:?} tau={}", self.xi, self.lambdas, self.tau)
    }
}

/// The `d × m` matrix with entries `t^{λ_k ξ_j}` (cyclotomic for rational `τ`).
pub fn family_matrix(f: &ExponentFamily) -> ExactMatrix {
    ExactMatrix::from_fn(f.dim(), f.count(), |j, k| f.power(f.exponent(j, k))).expect("uniform order")
}

fn check_selection(f: &ExponentFamily, rows: &[usize], cols: &[usize]) -> Result<(Vec<usize>, Vec<usize>), FamilyError> {
    if rows.len() != cols.len() {
        return Err(FamilyError::Selection(format!(
            "{} rows but {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let norm = |idx: &[usize], bound: usize, what: &str| -> Result<Vec<usize>, FamilyError> {
        let mut v = idx.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != idx.len() {
            return Err(FamilyError::Selection(format!("repeated {what} index")));
        }
        if v.last().is_some_and(|&x| x >= bound) {
            return Err(FamilyError::Selection(format!("{what} index out of range")));
        }
        Ok(v)
    };
    Ok((norm(rows, f.dim(), "row")?, norm(cols, f.count(), "column")?))
}

/// Exact determinant of the submatrix on `rows × cols` (indices taken in
/// ascending order), as a polynomial in `t`.
pub fn minor_poly(f: &ExponentFamily, rows: &[usize], cols: &[usize]) -> Result<CycPolynomial, FamilyError> {
    let (rows, cols) = check_selection(f, rows, cols)?;
    Ok(family_matrix(f).submatrix(&rows, &cols).det()?)
}

fn integer_minor_at(f: &ExponentFamily, rows: &[usize], cols: &[usize], r: &Rational) -> Result<Rational, FamilyError> {
    let m = ExactMatrix::from_fn(rows.len(), cols.len(), |a, b| {
        let e = f.exponent(rows[a], cols[b]);
        let v = r.pow(u32::try_from(e).expect("exponent fits u32"));
        CycPolynomial::constant(Cyclotomic::from_rational(1, &v))
    })?;
    let d = m.det()?;
    Ok(d.as_constant()
        .and_then(|c| c.as_rational())
        .expect("rational determinant"))
}

/// `P_S(2) > 0`, evaluated exactly; rows and columns are taken ascending.
pub fn minor_positivity_certificate(f: &ExponentFamily, rows: &[usize], cols: &[usize]) -> Result<bool, FamilyError> {
    if f.tau != Tau::Transcendental {
        return Err(FamilyError::RequiresTranscendental);
    }
    let (rows, cols) = check_selection(f, rows, cols)?;
    Ok(integer_minor_at(f, &rows, &cols, &Rational::from(2))?.is_positive())
}

/// Evaluates the minor directly and through its factorization
///
/// ```text
/// P_S(r) = Π_{i>j} (x_i − x_j) · Π_j r^{λ_{s_0} ξ_{r_j}} · s_κ(x_0, …, x_{L−1})
/// ```
///
/// with `x_k = r^{λ_{s_k} − λ_{s_0}}` and `κ = (ξ_{r_{L−1}} − L + 1, …, ξ_{r_0})`,
/// and reports whether the two agree.
pub fn factorization_crosscheck(f: &ExponentFamily, rows: &[usize], cols: &[usize], r: &Rational) -> Result<bool, FamilyError> {
    let (rows, cols) = check_selection(f, rows, cols)?;
    if !r.is_positive() {
        return Err(FamilyError::Selection("evaluation point must be positive".into()));
    }
    let direct = integer_minor_at(f, &rows, &cols, r)?;
    Ok(direct == factorized_minor(f, &rows, &cols, r))
}

/// Right-hand side of the factorization, for ascending `rows` and `cols`.
pub fn factorized_minor(f: &ExponentFamily, rows: &[usize], cols: &[usize], r: &Rational) -> Rational {
    let l = rows.len();
    if l == 0 {
        return Rational::one();
    }
    let pow = |e: u64| r.pow(u32::try_from(e).expect("exponent fits u32"));
    let base = f.lambdas[cols[0]];
    let x: Vec<Rational> = cols.iter().map(|&c| pow(f.lambdas[c] - base)).collect();
    let mut acc = Rational::one();
    for i in 0..l {
        for j in 0..i {
            acc = &acc * &(&x[i] - &x[j]);
        }
    }
    for &row in rows {
        acc = &acc * &pow(base * f.xi[row]);
    }
    let parts: Vec<u64> = (0..l).map(|i| f.xi[rows[l - 1 - i]] - (l - 1 - i) as u64).collect();
    let kappa = SchurPartition::new(&parts).expect("strictly increasing xi gives a partition");
    &acc * &schur_evaluate(&kappa, &x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CertifyMethod {
    /// Every square minor is positive at the rational point `t = point`.
    Positivity { point: i64 },
    /// Every consecutive-row minor is a nonzero element of `Q(ζ_order)`.
    CyclotomicMinors { order: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub certified: bool,
    #[serde(flatten)]
    pub method: CertifyMethod,
    pub minors_checked: u64,
    pub witness: Option<MinorWitness>,
}

/// Certifies that generic generating vectors give full spark orbit frames.
///
/// Transcendental `τ`: all square submatrices must pass
/// [`minor_positivity_certificate`]. Rational `τ`: every consecutive-row
/// minor must be nonzero in `Q(ζ_q)`.
pub fn certify_family_full_spark(f: &ExponentFamily, opts: &CheckOptions) -> Result<FamilyCertificate, FamilyError> {
    match f.tau {
        Tau::Rational { q, .. } => {
            let report = consecutive_minor_check(&family_matrix(f), opts)?;
            Ok(FamilyCertificate {
                certified: report.holds,
                method: CertifyMethod::CyclotomicMinors { order: q as u32 },
                minors_checked: report.minors_checked,
                witness: report.witness,
            })
        }
        Tau::Transcendental => positivity_over_all_minors(f, opts),
    }
}

fn positivity_over_all_minors(f: &ExponentFamily, opts: &CheckOptions) -> Result<FamilyCertificate, FamilyError> {
    let (d, m) = (f.dim(), f.count());
    let lmax = d.min(m);
    let required: u64 = (1..=lmax)
        .map(|l| binomial(d as u64, l as u64).saturating_mul(binomial(m as u64, l as u64)))
        .fold(0u64, u64::saturating_add);
    if required > opts.budget {
        return Err(FamilyError::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let mut checked = 0u64;
    for l in 1..=lmax {
        let ncols = binomial(m as u64, l as u64);
        let total = binomial(d as u64, l as u64) * ncols;
        let selection = |i: usize| {
            (
                unrank(d, l, i as u64 / ncols),
                unrank(m, l, i as u64 % ncols),
            )
        };
        let fail = first_failing_index(total as usize, opts.threads, |i| {
            let (rows, cols) = selection(i);
            minor_positivity_certificate(f, &rows, &cols)
        })?;
        if let Some(i) = fail {
            let (rows, cols) = selection(i);
            return Ok(FamilyCertificate {
                certified: false,
                method: CertifyMethod::Positivity { point: 2 },
                minors_checked: checked + i as u64 + 1,
                witness: Some(MinorWitness { rows, cols }),
            });
        }
        checked += total;
    }
    Ok(FamilyCertificate {
        certified: true,
        method: CertifyMethod::Positivity { point: 2 },
        minors_checked: checked,
        witness: None,
    })
}

/// Integer value of `P_S(2)`; exposed for reporting.
pub fn minor_at_two(f: &ExponentFamily, rows: &[usize], cols: &[usize]) -> Result<BigInt, FamilyError> {
    let (rows, cols) = check_selection(f, rows, cols)?;
    let v = integer_minor_at(f, &rows, &cols, &Rational::from(2))?;
    debug_assert!(v.denom().is_one());
    Ok(v.numer().clone())
}
