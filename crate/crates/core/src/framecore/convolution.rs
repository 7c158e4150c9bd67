//! Full spark test through the representation coefficient `V(g) = ⟨φ, π(g)φ⟩`.
//!
//! The orbit `{π(x)φ}` is full spark iff no sequence `c` supported on `d`
//! group elements has `c ∗ V = 0`. For a fixed support `X` this says the left
//! translates `y ↦ V(x⁻¹y)`, `x ∈ X`, are linearly independent; the test
//! checks that reading for every `d`-subset `X`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{FrameError, SparkOptions};
use crate::groups::{GroupElement, InducedRep};
use crate::subsets::{binomial, scan};

/// `π(g)` with complex entries.
pub fn numeric_rep_matrix(rep: &InducedRep, g: GroupElement) -> DMatrix<Complex64> {
    let d = rep.dim();
    let exps = rep.diagonal_exponents(g.x);
    let perm = rep.shift_permutation(g.a);
    let n = rep.n() as f64;
    DMatrix::from_fn(d, d, |j, i| {
        if perm[j] == i {
            Complex64::from_polar(1.0, std::f64::consts::TAU * exps[j] as f64 / n)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `V(g) = ⟨φ, π(g)φ⟩` for every `g` in the group's element order.
pub fn coefficient_function(rep: &InducedRep, phi: &[Complex64]) -> Vec<Complex64> {
    let phi = DVector::from_column_slice(phi);
    rep.group()
        .elements()
        .into_iter()
        .map(|g| (numeric_rep_matrix(rep, g) * &phi).dotc(&phi))
        .collect()
}

/// Volume spanned by unit-normalized vectors, by modified Gram-Schmidt.
fn normalized_volume(vectors: &[DVector<Complex64>]) -> f64 {
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(vectors.len());
    let mut vol = 1.0;
    for v in vectors {
        let mut w = v.normalize();
        for b in &basis {
            let proj = b.dotc(&w);
            w -= b * proj;
        }
        let r = w.norm();
        vol *= r;
        if r == 0.0 {
            return 0.0;
        }
        basis.push(w / Complex64::new(r, 0.0));
    }
    vol
}

/// True iff for every `d`-subset `X` of the group the translates of `V` by
/// `X` are independent, with normalized volume above `opts.tol`.
pub fn convolution_full_spark_test(rep: &InducedRep, phi: &[Complex64], opts: &SparkOptions) -> Result<bool, FrameError> {
    let d = rep.dim();
    if phi.len() != d {
        return Err(FrameError::DimensionMismatch { expected: d, got: phi.len() });
    }
    if phi.iter().all(|z| z.norm() == 0.0) {
        return Err(FrameError::ZeroVector);
    }
    if !rep.is_irreducible() {
        return Err(FrameError::Reducible);
    }
    let group = rep.group();
    let elements = group.elements();
    let size = elements.len();
    let required = binomial(size as u64, d as u64);
    let budget = opts.budget.unwrap_or(super::spark::DEFAULT_NUMERIC_BUDGET);
    if required > budget {
        return Err(FrameError::BudgetExceeded { required, budget });
    }
    let v = coefficient_function(rep, phi);
    let index = |g: GroupElement| elements.iter().position(|&e| e == g).expect("closed");
    let translates: Vec<DVector<Complex64>> = elements
        .iter()
        .map(|&x| {
            let xinv = group.inverse(x).expect("member");
            DVector::from_iterator(
                size,
                elements
                    .iter()
                    .map(|&y| v[index(group.multiply(xinv, y).expect("member"))]),
            )
        })
        .collect();
    let out = scan(size, d, opts.threads, true, |xs| {
        let chosen: Vec<DVector<Complex64>> = xs.iter().map(|&i| translates[i].clone()).collect();
        Ok::<_, FrameError>((normalized_volume(&chosen) > opts.tol, None))
    })?;
    Ok(out.first_failure.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framecore::{frame::random_gaussian_vector, full_spark_numeric, orbit_frame, FrameMode, GeneratingVector, OrbitFamily, SparkVerdict};
    use crate::groups::{induced_rep, SemidirectGroup};

    #[test]
    fn numeric_rep_is_the_exact_rep() {
        let rep = induced_rep(&SemidirectGroup::from_parts(7, &[1, 2, 4]).unwrap(), 3);
        for g in rep.group().elements() {
            let exact = rep.matrix(g).unwrap();
            let num = numeric_rep_matrix(&rep, g);
            for j in 0..3 {
                for i in 0..3 {
                    assert!((exact.get(j, i).eval_unit(0.0) - num[(j, i)]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn agrees_with_direct_test() {
        for (n, h) in [(3u64, vec![1u64, 2]), (5, vec![1, 2, 3, 4]), (7, vec![1, 6])] {
            let rep = induced_rep(&SemidirectGroup::from_parts(n, &h).unwrap(), 1);
            for seed in 0..3 {
                let phi = random_gaussian_vector(rep.dim(), seed);
                let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::ExplicitNumeric(phi.clone()), FrameMode::Numeric).unwrap();
                let direct = full_spark_numeric(&frame, &SparkOptions::default()).unwrap().verdict == SparkVerdict::FullSpark;
                assert_eq!(convolution_full_spark_test(&rep, &phi, &SparkOptions::default()).unwrap(), direct);
            }
        }
    }

    #[test]
    fn detects_a_deficient_vector() {
        // φ = e_0 in Z_3 ⋊ {1,2}: π(1,1)φ and π(0,1)φ are parallel
        let rep = induced_rep(&SemidirectGroup::from_parts(3, &[1, 2]).unwrap(), 1);
        let phi = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(!convolution_full_spark_test(&rep, &phi, &SparkOptions::default()).unwrap());
    }

    #[test]
    fn preconditions() {
        let rep = induced_rep(&SemidirectGroup::from_parts(3, &[1, 2]).unwrap(), 1);
        let zero = vec![Complex64::new(0.0, 0.0); 2];
        assert!(matches!(convolution_full_spark_test(&rep, &zero, &SparkOptions::default()), Err(FrameError::ZeroVector)));
        let reducible = induced_rep(&SemidirectGroup::from_parts(3, &[1, 2]).unwrap(), 0);
        let phi = vec![Complex64::new(1.0, 0.0); 2];
        assert!(matches!(convolution_full_spark_test(&reducible, &phi, &SparkOptions::default()), Err(FrameError::Reducible)));
    }
}
