use std::fmt;

use super::{CycPolynomial, Cyclotomic, ExactError};

/// Largest size handled by cofactor expansion; larger matrices use
/// fraction-free elimination.
pub const COFACTOR_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetAlgorithm {
    /// Picks cofactor expansion up to [`COFACTOR_LIMIT`], Bareiss above.
    Auto,
    Cofactor,
    Bareiss,
}

/// Dense row-major matrix over `Q(ζ_N)[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CycPolynomial>,
}

impl ExactMatrix {
    /// Entries are lifted to a common ambient order; rational entries
    /// (order 1) embed into any field.
    pub fn new(rows: usize, cols: usize, entries: Vec<CycPolynomial>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut order = 1;
        for e in &entries {
            if e.order() != 1 {
                if order != 1 && order != e.order() {
                    return Err(ExactError::OrderMismatch(order, e.order()));
                }
                order = e.order();
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            order,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycPolynomial,
    ) -> Result<Self, ExactError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn from_cyclotomic(rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Result<Self, ExactError> {
        Self::new(rows, cols, entries.into_iter().map(CycPolynomial::constant).collect())
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                CycPolynomial::one(order)
            } else {
                CycPolynomial::zero(order)
            }
        })
        .expect("identity is well formed")
        .with_order(order)
    }

    fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: rows.len(),
            cols: cols.len(),
            order: self.order,
            entries,
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            order: self.order,
            entries,
        }
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let order = if self.order == 1 { other.order } else { self.order };
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CycPolynomial::zero(order);
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(ExactMatrix::new(self.rows, other.cols, entries)?.with_order(order))
    }

    pub fn det(&self) -> Result<CycPolynomial, ExactError> {
        self.det_with(DetAlgorithm::Auto)
    }

    pub fn det_with(&self, algorithm: DetAlgorithm) -> Result<CycPolynomial, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        if self.rows == 0 {
            return Ok(CycPolynomial::one(self.order));
        }
        let use_cofactor = match algorithm {
            DetAlgorithm::Auto => self.rows <= COFACTOR_LIMIT,
            DetAlgorithm::Cofactor => true,
            DetAlgorithm::Bareiss => false,
        };
        let d = if use_cofactor {
            let idx: Vec<usize> = (0..self.cols).collect();
            self.cofactor(0, &idx)?
        } else {
            self.bareiss()?
        };
        Ok(lift(d, self.order))
    }

    /// Laplace expansion along row `row` over the remaining columns.
    fn cofactor(&self, row: usize, cols: &[usize]) -> Result<CycPolynomial, ExactError> {
        if cols.len() == 1 {
            return Ok(self.get(row, cols[0]).clone());
        }
        if cols.len() == 2 {
            let a = self.get(row, cols[0]).checked_mul(self.get(row + 1, cols[1]))?;
            let b = self.get(row, cols[1]).checked_mul(self.get(row + 1, cols[0]))?;
            return a.checked_sub(&b);
        }
        let mut acc = CycPolynomial::zero(self.order);
        let mut rest = Vec::with_capacity(cols.len() - 1);
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            rest.clear();
            rest.extend(cols.iter().copied().filter(|&x| x != c));
            let minor = self.cofactor(row + 1, &rest)?;
            if minor.is_zero() {
                continue;
            }
            let term = entry.checked_mul(&minor)?;
            acc = if pos % 2 == 0 {
                acc.checked_add(&term)?
            } else {
                acc.checked_sub(&term)?
            };
        }
        Ok(acc)
    }

    /// Fraction-free two-step elimination; every division is exact.
    fn bareiss(&self) -> Result<CycPolynomial, ExactError> {
        let n = self.rows;
        let mut m: Vec<Vec<CycPolynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = CycPolynomial::one(self.order);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(CycPolynomial::zero(self.order)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j]
                        .checked_mul(&m[k][k])?
                        .checked_sub(&m[i][k].checked_mul(&m[k][j])?)?;
                    m[i][j] = if k == 0 {
                        num
                    } else {
                        num.div_exact(&prev).map_err(|e| match e {
                            ExactError::InexactDivision => ExactError::Internal(
                                "fraction-free elimination produced an inexact division".into(),
                            ),
                            other => other,
                        })?
                    };
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Rank over the fraction field of `Q(ζ_N)[t]`, by fraction-free elimination
    /// with row and column pivoting.
    pub fn rank(&self) -> Result<usize, ExactError> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<Vec<CycPolynomial>> = (0..rows)
            .map(|i| (0..cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        let mut prev = CycPolynomial::one(self.order);
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let num = m[i][j]
                        .checked_mul(&m[rank][col])?
                        .checked_sub(&m[i][col].checked_mul(&m[rank][j])?)?;
                    m[i][j] = num.div_exact(&prev)?;
                }
                m[i][col] = CycPolynomial::zero(self.order);
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        Ok(rank)
    }
}

fn lift(p: CycPolynomial, order: u32) -> CycPolynomial {
    if p.order() == order || order == 1 {
        p
    } else {
        // a determinant of an all-rational matrix reported in the ambient field
        CycPolynomial::from_terms(
            order,
            p.terms()
                .map(|(e, c)| (e, Cyclotomic::one(order).checked_mul(c).expect("rational lift")))
                .collect::<Vec<_>>(),
        )
        .expect("rational lift")
    }
}

/// Exact determinant; cofactor expansion up to 4×4, Bareiss above.
pub fn det_exact(m: &ExactMatrix) -> Result<CycPolynomial, ExactError> {
    m.det()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over Q(z{})[t]", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
