use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use sparkframe::criteria::{consecutive_minor_check, tight_columns_check, CheckOptions};
use sparkframe::erasure::{reconstruct, transmit, ErasureError, ErasurePattern};
use sparkframe::exactalg::{Cyclotomic, ExactMatrix, Rational};
use sparkframe::framecore::{
    convolution_full_spark_test, frame_bounds, full_spark_exact, full_spark_numeric, is_tight, orbit_frame,
    random_gaussian_vector, spark, FrameMatrix, FrameMode, GeneratingVector, OrbitFamily, SparkOptions, SparkVerdict,
};
use sparkframe::genfamily::{certify_family_full_spark, ExponentFamily, Tau, DEFAULT_TAU};
use sparkframe::groups::{deficiency_verdict, induced_rep, InducedRep, SemidirectGroup, UnitSubgroup, Verdict};
use sparkframe::subsets::binomial;

fn cyclotomic(order: u32, coeffs: &[i64]) -> Cyclotomic {
    let rs: Vec<Rational> = coeffs.iter().map(|&c| Rational::from(c)).collect();
    Cyclotomic::from_coeffs(order, &rs)
}

fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (1u32..=12).prop_flat_map(|n| prop::collection::vec(-5i64..=5, n as usize).prop_map(move |c| cyclotomic(n, &c)))
}

fn numeric_det(m: &DMatrix<Complex64>) -> Complex64 {
    m.clone().lu().determinant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn complex_embedding_is_multiplicative((a, b) in (1u32..=12).prop_flat_map(|n| (
        prop::collection::vec(-5i64..=5, n as usize),
        prop::collection::vec(-5i64..=5, n as usize),
    ).prop_map(move |(x, y)| (cyclotomic(n, &x), cyclotomic(n, &y))))) {
        let prod = a.checked_mul(&b).unwrap();
        prop_assert!((prod.to_complex() - a.to_complex() * b.to_complex()).norm() < 1e-10);
    }

    #[test]
    fn inverse_is_exact(a in arb_cyclotomic()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!(inv.checked_mul(&a).unwrap().is_one());
    }

    #[test]
    fn zero_test_matches_numeric_image(a in arb_cyclotomic()) {
        prop_assert_eq!(a.is_zero(), a.to_complex().norm() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_determinant_matches_floating_point(n in 1u32..=12, entries in prop::collection::vec(prop::collection::vec(-10i64..=10, 3), 16)) {
        let cells: Vec<Cyclotomic> = entries.iter().map(|c| {
            let mut c = c.clone();
            c.truncate(n as usize);
            cyclotomic(n, &c)
        }).collect();
        let numeric = DMatrix::from_fn(4, 4, |i, j| cells[i * 4 + j].to_complex());
        let exact = ExactMatrix::from_cyclotomic(4, 4, cells).unwrap().det().unwrap();
        let exact = exact.as_constant().unwrap().to_complex();
        let direct = numeric_det(&numeric);
        let scale = direct.norm().max(1.0);
        prop_assert!((exact - direct).norm() / scale < 1e-8, "{exact} vs {direct}");
    }
}

fn subgroups(n: u64) -> Vec<UnitSubgroup> {
    let units = UnitSubgroup::units(n).unwrap();
    let mut out: Vec<UnitSubgroup> = Vec::new();
    for &a in units.elements() {
        for &b in units.elements() {
            let h = UnitSubgroup::generated_by(n, &[a, b]).unwrap();
            if !out.iter().any(|g| g.elements() == h.elements()) {
                out.push(h);
            }
        }
    }
    out
}

/// Every `(Z_N ⋊ H, ξ)` with `N ≤ max_n`, `|G| ≤ max_order`, and a unit `ξ`.
fn reps(max_n: u64, max_order: usize) -> Vec<InducedRep> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for h in subgroups(n) {
            let group = SemidirectGroup::new(h);
            if group.order() > max_order {
                continue;
            }
            for xi in 1..n {
                if num_integer::gcd(xi, n) == 1 {
                    out.push(induced_rep(&group, xi));
                }
            }
        }
    }
    out
}

fn group_frame(rep: &InducedRep, v: &GeneratingVector, mode: FrameMode) -> FrameMatrix {
    orbit_frame(OrbitFamily::Group(rep), v, mode).unwrap()
}

fn affordable(rep: &InducedRep, limit: u64) -> bool {
    binomial(rep.group().order() as u64, rep.dim() as u64) <= limit
}

#[test]
fn deficient_verdicts_have_dependent_subsets() {
    let mut seen = 0;
    for rep in reps(30, 30) {
        if deficiency_verdict(rep.group(), rep.xi()).verdict != Verdict::Deficient || !affordable(&rep, 200_000) {
            continue;
        }
        for seed in 0..5 {
            let f = group_frame(&rep, &GeneratingVector::RandomGaussian(seed), FrameMode::Exact);
            let cert = full_spark_exact(&f, &SparkOptions::default()).unwrap();
            assert_eq!(cert.verdict, SparkVerdict::Deficient, "N = {}, H = {:?}", rep.n(), rep.h_enumeration());
            let bad = cert.failing_subset.unwrap();
            // any d survivors containing a dependent set defeat reconstruction
            let pattern = ErasurePattern::keeping(f.count(), &bad).unwrap();
            let survivors = transmit(&f, &random_gaussian_vector(f.dim(), seed), &pattern).unwrap();
            assert!(matches!(reconstruct(&f, &survivors), Err(ErasureError::Singular { .. })));
        }
        seen += 1;
    }
    assert!(seen >= 5, "only {seen} deficient instances");
}

#[test]
fn prime_modulus_verdicts_are_certified() {
    for rep in reps(7, 42) {
        let v = deficiency_verdict(rep.group(), rep.xi());
        if v.verdict != Verdict::FullSpark || !affordable(&rep, 200_000) {
            continue;
        }
        let f = group_frame(&rep, &GeneratingVector::monomial_squares(rep.dim()), FrameMode::Exact);
        let cert = full_spark_exact(&f, &SparkOptions::default()).unwrap();
        assert_eq!(cert.verdict, SparkVerdict::FullSpark, "N = {}, H = {:?}", rep.n(), rep.h_enumeration());
    }
}

#[test]
fn exact_full_spark_survives_specialization() {
    for rep in reps(9, 30) {
        if !affordable(&rep, 50_000) {
            continue;
        }
        let f = group_frame(&rep, &GeneratingVector::monomial_squares(rep.dim()), FrameMode::Exact);
        let exact = full_spark_exact(&f, &SparkOptions::default()).unwrap();
        let sp = spark(&f, &SparkOptions::default()).unwrap();
        assert_eq!(exact.verdict == SparkVerdict::FullSpark, sp == f.dim() + 1);
        if exact.verdict == SparkVerdict::FullSpark {
            let numeric = full_spark_numeric(&f.specialize(DEFAULT_TAU).unwrap(), &SparkOptions::default()).unwrap();
            assert_eq!(numeric.verdict, SparkVerdict::FullSpark, "N = {}, H = {:?}", rep.n(), rep.h_enumeration());
        }
    }
}

#[test]
fn irreducible_orbits_are_tight() {
    for rep in reps(9, usize::MAX) {
        if !rep.is_irreducible() {
            continue;
        }
        for seed in 0..3 {
            let v = random_gaussian_vector(rep.dim(), seed);
            let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let f = group_frame(&rep, &GeneratingVector::ExplicitNumeric(v), FrameMode::Numeric);
            let expected = rep.group().order() as f64 * norm_sq / rep.dim() as f64;
            let b = frame_bounds(&f);
            assert!(is_tight(&f, 1e-9));
            assert!((b.lower - expected).abs() < 1e-9 * expected && (b.upper - expected).abs() < 1e-9 * expected);
        }
    }
}

#[test]
fn spark_duality() {
    let mut deficient = 0;
    for rep in reps(9, 24) {
        if !affordable(&rep, 50_000) {
            continue;
        }
        for seed in 0..2 {
            let f = group_frame(&rep, &GeneratingVector::RandomGaussian(seed), FrameMode::Exact);
            let cert = full_spark_exact(&f, &SparkOptions::default()).unwrap();
            let sp = spark(&f, &SparkOptions::default()).unwrap();
            assert_eq!(cert.verdict == SparkVerdict::FullSpark, sp == f.dim() + 1);
            deficient += usize::from(cert.verdict == SparkVerdict::Deficient);
        }
    }
    assert!(deficient > 0);
}

#[test]
fn convolution_test_matches_direct_test() {
    let opts = SparkOptions::default();
    let mut disagreements = Vec::new();
    for rep in reps(12, 12) {
        if !rep.is_irreducible() {
            continue;
        }
        for seed in 0..10 {
            let phi = random_gaussian_vector(rep.dim(), seed);
            let conv = convolution_full_spark_test(&rep, &phi, &opts).unwrap();
            let f = group_frame(&rep, &GeneratingVector::ExplicitNumeric(phi), FrameMode::Numeric);
            let direct = full_spark_numeric(&f, &opts).unwrap().verdict == SparkVerdict::FullSpark;
            if conv != direct {
                disagreements.push((rep.n(), rep.h_enumeration().to_vec(), seed));
            }
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn tight_columns_imply_tight_frames() {
    for rep in reps(9, usize::MAX) {
        let m = rep.diagonal_matrix();
        if !tight_columns_check(&m).unwrap() {
            continue;
        }
        for seed in 0..5 {
            let v = GeneratingVector::ExplicitNumeric(random_gaussian_vector(rep.dim(), 40 + seed));
            let f = orbit_frame(OrbitFamily::Matrix(&m), &v, FrameMode::Numeric).unwrap();
            assert!(is_tight(&f, 1e-9), "N = {}, H = {:?}", rep.n(), rep.h_enumeration());
        }
    }
}

#[test]
fn consecutive_minors_imply_full_spark() {
    let mut seen = 0;
    for rep in reps(9, 30) {
        let m = rep.diagonal_matrix();
        if !affordable(&rep, 50_000) || !consecutive_minor_check(&m, &CheckOptions::default()).unwrap().holds {
            continue;
        }
        let f = orbit_frame(OrbitFamily::Matrix(&m), &GeneratingVector::monomial_squares(rep.dim()), FrameMode::Exact).unwrap();
        assert_eq!(full_spark_exact(&f, &SparkOptions::default()).unwrap().verdict, SparkVerdict::FullSpark);
        seen += 1;
    }
    assert!(seen > 10);
}

#[test]
fn certified_family_is_numerically_full_spark() {
    let family = ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).unwrap();
    assert!(certify_family_full_spark(&family, &CheckOptions::default()).unwrap().certified);
    for seed in 0..3 {
        let v = GeneratingVector::ExplicitNumeric(random_gaussian_vector(4, seed));
        let f = orbit_frame(OrbitFamily::Exponent(&family), &v, FrameMode::Numeric).unwrap();
        let cert = full_spark_numeric(&f, &SparkOptions { tol: 1e-8, ..SparkOptions::default() }).unwrap();
        assert_eq!(cert.verdict, SparkVerdict::FullSpark);
    }
}
