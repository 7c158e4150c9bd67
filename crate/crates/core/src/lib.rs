//! Construction and exact certification of full spark frames.
//!
//! A frame of `M` vectors in `C^d` is *full spark* when every `d` of them form
//! a basis, so the signal survives the loss of any `M − d` frame coefficients.
//! This crate builds frames as orbits of a vector under diagonal-times-shift
//! operators (induced representations of `Z_N ⋊ H` or generalized Vandermonde
//! families) and certifies full spark by exhaustive minor checks in exact
//! cyclotomic arithmetic or in floating point.

pub mod cli;
pub mod criteria;
pub mod erasure;
pub mod exactalg;
pub mod framecore;
pub mod genfamily;
pub mod groups;
pub mod io;
pub mod subsets;
