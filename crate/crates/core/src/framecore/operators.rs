use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FrameError, FrameMatrix};

/// Convergence threshold for Jacobi sweeps, relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

fn check_len(expected: usize, got: usize) -> Result<(), FrameError> {
    if expected != got {
        return Err(FrameError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `w ↦ (⟨w, v_k⟩)_k` with `⟨a, b⟩ = Σ a_i conj(b_i)`.
pub fn analysis(frame: &FrameMatrix, w: &[Complex64]) -> Result<Vec<Complex64>, FrameError> {
    check_len(frame.dim(), w.len())?;
    let m = frame.to_numeric_matrix();
    let w = DVector::from_column_slice(w);
    Ok((m.adjoint() * w).iter().copied().collect())
}

/// `c ↦ Σ c_k v_k`.
pub fn synthesis(frame: &FrameMatrix, c: &[Complex64]) -> Result<Vec<Complex64>, FrameError> {
    check_len(frame.count(), c.len())?;
    let m = frame.to_numeric_matrix();
    let c = DVector::from_column_slice(c);
    Ok((m * c).iter().copied().collect())
}

/// `S = Φ Φ*`, the `d × d` frame operator.
pub fn frame_operator(frame: &FrameMatrix) -> DMatrix<Complex64> {
    let m = frame.to_numeric_matrix();
    &m * m.adjoint()
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations on
/// the real symmetric embedding `[[Re, −Im], [Im, Re]]`. Every eigenvalue of
/// the embedding appears twice; one copy of each pair is returned.
pub fn hermitian_eigenvalues(s: &DMatrix<Complex64>) -> Vec<f64> {
    let d = s.nrows();
    let n = 2 * d;
    let mut a = DMatrix::<f64>::from_fn(n, n, |i, j| {
        let z = s[(i % d, j % d)];
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    eig.into_iter().step_by(2).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Optimal frame bounds: the extreme eigenvalues of `S`. A non-spanning set
/// reports `lower = 0` (up to rounding).
pub fn frame_bounds(frame: &FrameMatrix) -> FrameBounds {
    let eig = hermitian_eigenvalues(&frame_operator(frame));
    FrameBounds {
        lower: eig[0].max(0.0),
        upper: *eig.last().expect("nonempty frame"),
    }
}

/// `‖S − (tr S/d) I‖_max ≤ tol · tr S/d`.
pub fn is_tight(frame: &FrameMatrix, tol: f64) -> bool {
    let s = frame_operator(frame);
    let d = s.nrows();
    let mean = s.trace().re / d as f64;
    let dev = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| {
            let target = if i == j { mean } else { 0.0 };
            (s[(i, j)] - Complex64::new(target, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    dev <= tol * mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framecore::{orbit_frame, FrameMode, GeneratingVector, OrbitFamily, Provenance};
    use crate::genfamily::{ExponentFamily, Tau};
    use crate::groups::{induced_rep, SemidirectGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn basis(d: usize) -> FrameMatrix {
        FrameMatrix::numeric(DMatrix::identity(d, d), Provenance::plain("identity", d)).unwrap()
    }

    #[test]
    fn orthonormal_basis() {
        let f = basis(3);
        assert_eq!(analysis(&f, &[c(1.0), c(0.0), c(0.0)]).unwrap(), vec![c(1.0), c(0.0), c(0.0)]);
        let b = frame_bounds(&f);
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
        assert!(is_tight(&f, 1e-12));
        assert!(analysis(&f, &[c(1.0)]).is_err());
        assert!(synthesis(&f, &[c(1.0)]).is_err());
    }

    #[test]
    fn adjoint_identity_on_random_frame() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut z = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let m = DMatrix::from_fn(4, 20, |_, _| z());
        let f = FrameMatrix::numeric(m, Provenance::plain("random", 20)).unwrap();
        let w: Vec<Complex64> = (0..4).map(|_| z()).collect();
        let cs: Vec<Complex64> = (0..20).map(|_| z()).collect();
        let lhs: Complex64 = analysis(&f, &w).unwrap().iter().zip(&cs).map(|(a, b)| a * b.conj()).sum();
        let rhs: Complex64 = w.iter().zip(&synthesis(&f, &cs).unwrap()).map(|(a, b)| a * b.conj()).sum();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn jacobi_matches_library_eigensolver() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..6 {
            let a = DMatrix::from_fn(d, d + 2, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let s = &a * a.adjoint();
            let ours = hermitian_eigenvalues(&s);
            let mut theirs: Vec<f64> = s.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            theirs.sort_by(f64::total_cmp);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() < 1e-9, "{ours:?} vs {theirs:?}");
            }
        }
    }

    #[test]
    fn sqrt2_bounds() {
        let fam = ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).unwrap();
        let v = GeneratingVector::ExplicitNumeric([1.0, 2.0, 3.0, 4.0].map(c).to_vec());
        let f = orbit_frame(OrbitFamily::Exponent(&fam), &v, FrameMode::Numeric).unwrap();
        let b = frame_bounds(&f);
        assert!((b.lower - 174.624).abs() < 1e-2, "{b:?}");
        assert!((b.upper - 257.848).abs() < 1e-2, "{b:?}");
        assert!(!is_tight(&f, 1e-9));
    }

    #[test]
    fn irreducible_orbit_is_tight() {
        let rep = induced_rep(&SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).unwrap(), 1);
        let v = GeneratingVector::monomial_squares(4);
        let f = orbit_frame(OrbitFamily::Group(&rep), &v, FrameMode::Numeric).unwrap();
        assert!(is_tight(&f, 1e-9));
        let b = frame_bounds(&f);
        // ‖v‖² = 4 for unimodular entries; A = |G|·‖v‖²/d = 20
        assert!((b.lower - 20.0).abs() < 1e-9 * 20.0 && (b.upper - 20.0).abs() < 1e-9 * 20.0);
        let w = vec![c(1.0), c(2.0), c(0.0), c(-1.0)];
        let back = synthesis(&f, &analysis(&f, &w).unwrap()).unwrap();
        for (x, y) in back.iter().zip(&w) {
            assert!((x - y * 20.0).norm() < 1e-9);
        }
    }
}
