use std::fmt;

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::exactalg::{CycPolynomial, Cyclotomic, ExactMatrix, Rational};

/// A partition: weakly decreasing positive parts. Zero parts are dropped on
/// construction, so `(0, …)` is the empty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchurPartition {
    parts: Vec<u64>,
}

impl SchurPartition {
    pub fn new(parts: &[u64]) -> Result<Self, FamilyError> {
        let parts: Vec<u64> = parts.iter().copied().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(FamilyError::InvalidPartition(parts));
        }
        Ok(SchurPartition { parts })
    }

    pub fn empty() -> Self {
        SchurPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for SchurPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn rational_det(m: usize, entry: impl Fn(usize, usize) -> Rational) -> Rational {
    let mat = ExactMatrix::from_fn(m, m, |i, j| {
        CycPolynomial::constant(Cyclotomic::from_rational(1, &entry(i, j)))
    })
    .expect("square rational matrix");
    mat.det()
        .expect("rational determinant")
        .as_constant()
        .and_then(|c| c.as_rational())
        .expect("constant rational determinant")
}

/// `s_κ(x_1, …, x_m)` by the bialternant `det(x_i^{κ_j+m−j}) / det(x_i^{m−j})`.
/// Repeated values make the denominator vanish; the tableau sum is used then.
pub fn schur_evaluate(kappa: &SchurPartition, values: &[Rational]) -> Rational {
    let m = values.len();
    if kappa.len() > m {
        return Rational::zero();
    }
    if kappa.is_empty() {
        return Rational::one();
    }
    let part = |j: usize| kappa.parts.get(j).copied().unwrap_or(0);
    let den = rational_det(m, |i, j| values[i].pow((m - 1 - j) as u32));
    if den.is_zero() {
        return schur_tableaux(kappa, values);
    }
    let num = rational_det(m, |i, j| {
        values[i].pow(u32::try_from(part(j) + (m - 1 - j) as u64).expect("exponent fits u32"))
    });
    &num / &den
}

/// `s_κ` as the sum of `x^T` over semistandard tableaux T of shape κ with
/// entries in `1..=m`.
pub fn schur_tableaux(kappa: &SchurPartition, values: &[Rational]) -> Rational {
    let m = values.len();
    let shape = kappa.parts();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len as usize]).collect();
    let mut total = Rational::zero();
    fill(&cells, 0, &mut grid, m, values, &Rational::one(), &mut total);
    total
}

fn fill(
    cells: &[(usize, usize)],
    idx: usize,
    grid: &mut [Vec<usize>],
    m: usize,
    values: &[Rational],
    acc: &Rational,
    total: &mut Rational,
) {
    if idx == cells.len() {
        *total = &*total + acc;
        return;
    }
    let (r, c) = cells[idx];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..m {
        grid[r][c] = v;
        let next = acc * &values[v];
        fill(cells, idx + 1, grid, m, values, &next, total);
    }
}
