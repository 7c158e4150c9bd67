//! Frames as `d × M` matrices of column vectors: orbit construction,
//! frame operators and bounds, and exhaustive full spark certification in
//! exact and floating-point arithmetic.

mod convolution;
mod frame;
mod operators;
mod spark;

pub use convolution::{coefficient_function, convolution_full_spark_test, numeric_rep_matrix};
pub use frame::{
    orbit_frame, random_gaussian_vector, FrameData, FrameMatrix, FrameMode, GeneratingVector, OrbitFamily,
    Provenance,
};
pub use operators::{
    analysis, frame_bounds, frame_operator, hermitian_eigenvalues, is_tight, synthesis, FrameBounds, JACOBI_TOL,
};
pub use spark::{
    full_spark, full_spark_exact, full_spark_numeric, normalized_abs_det, spark, zero_count, zero_count_check,
    SparkCertificate, SparkOptions, SparkVerdict, DEFAULT_EXACT_BUDGET, DEFAULT_NUMERIC_BUDGET, DEFAULT_TOL,
};

use thiserror::Error;

use crate::exactalg::ExactError;
use crate::groups::GroupError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the generating vector is zero")]
    ZeroVector,
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{0}")]
    ModeMismatch(String),
    #[error("{required} minors exceed the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("the representation is reducible")]
    Reducible,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
