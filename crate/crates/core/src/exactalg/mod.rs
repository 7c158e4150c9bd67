//! Exact arithmetic kernel: rationals, cyclotomic fields `Q(ζ_N)`, sparse
//! polynomials over them in one indeterminate `t`, and exact determinants.
//!
//! All values are immutable after construction and are `Send + Sync`.

mod cyclotomic;
mod cycpoly;
mod matrix;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic, IntPolynomial};
pub use cycpoly::{unit_power, CycPolynomial};
pub use matrix::{det_exact, DetAlgorithm, ExactMatrix, COFACTOR_LIMIT};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cyclotomic orders {0} and {1} are incompatible")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("determinant of a non-square {0}x{1} matrix")]
    NotSquare(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("exponent overflow in polynomial product")]
    DegreeOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
