//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sparkframe::criteria::{dft_submatrix_full_spark, evans_all_minors_check, uniform_distribution_check, CheckOptions};
use sparkframe::erasure::{erasure_trial, reconstruct, transmit, ErasurePattern, ErasureError};
use sparkframe::exactalg::{Cyclotomic, Rational};
use sparkframe::framecore::{
    convolution_full_spark_test, frame_bounds, full_spark_exact, full_spark_numeric, is_tight, orbit_frame,
    random_gaussian_vector, FrameMatrix, FrameMode, GeneratingVector, OrbitFamily, SparkOptions, SparkVerdict,
};
use sparkframe::genfamily::{certify_family_full_spark, factorized_minor, minor_poly, ExponentFamily, Tau};
use sparkframe::groups::{deficiency_verdict, induced_rep, SemidirectGroup, Verdict};
use sparkframe::io::certificate_payload_json;
use sparkframe::subsets::binomial;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn group_frame(n: u64, h: &[u64], v: &GeneratingVector, mode: FrameMode) -> FrameMatrix {
    let rep = induced_rep(&SemidirectGroup::from_parts(n, h).expect("valid subgroup"), 1);
    orbit_frame(OrbitFamily::Group(&rep), v, mode).expect("orbit frame")
}

fn z5_frame() -> FrameMatrix {
    group_frame(5, &[1, 2, 3, 4], &GeneratingVector::monomial_squares(4), FrameMode::Exact)
}

fn z9_frame() -> FrameMatrix {
    group_frame(9, &[1, 8], &GeneratingVector::monomial_squares(2), FrameMode::Exact)
}

fn sqrt2_family() -> ExponentFamily {
    ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).expect("family")
}

fn sqrt2_frame() -> FrameMatrix {
    let v = GeneratingVector::ExplicitNumeric([1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0)).to_vec());
    orbit_frame(OrbitFamily::Exponent(&sqrt2_family()), &v, FrameMode::Numeric).expect("family frame")
}

fn sum_sq(frame: &FrameMatrix) -> f64 {
    // ‖v‖² of the generating vector is the squared norm of column 0
    frame.to_numeric_matrix().column(0).norm_squared()
}

fn z5_reproduction() -> Outcome {
    let frame = z5_frame();
    let cert = full_spark_exact(&frame, &SparkOptions::default()).map_err(|e| e.to_string())?;
    ensure(cert.verdict == SparkVerdict::FullSpark, || format!("verdict {:?}", cert.verdict))?;
    ensure(cert.minors_checked == 4845, || format!("{} minors", cert.minors_checked))?;
    for tau in [std::f64::consts::SQRT_2, 0.3, 1.7] {
        let numeric = frame.specialize(tau).map_err(|e| e.to_string())?;
        let b = frame_bounds(&numeric);
        let expected = 5.0 * sum_sq(&numeric);
        ensure(is_tight(&numeric, 1e-9), || format!("not tight at τ = {tau}"))?;
        ensure(relative(b.lower, expected) < 1e-9 && relative(b.upper, expected) < 1e-9, || {
            format!("bounds {b:?} vs 5‖v‖² = {expected}")
        })?;
    }
    Ok("4845 nonzero minors; tight with A = B = 5‖v‖² = 20".into())
}

fn sqrt2_reproduction() -> Outcome {
    let frame = sqrt2_frame();
    let b = frame_bounds(&frame);
    ensure((170.0..=180.0).contains(&b.lower), || format!("A = {}", b.lower))?;
    ensure((252.0..=264.0).contains(&b.upper), || format!("B = {}", b.upper))?;
    let spark = full_spark_numeric(&frame, &SparkOptions { tol: 1e-8, ..SparkOptions::default() }).map_err(|e| e.to_string())?;
    ensure(spark.verdict == SparkVerdict::FullSpark, || format!("numeric verdict {:?}", spark.verdict))?;
    ensure(spark.minors_checked == 20475, || format!("{} numeric minors", spark.minors_checked))?;
    let cert = certify_family_full_spark(&sqrt2_family(), &CheckOptions::default()).map_err(|e| e.to_string())?;
    ensure(cert.certified && cert.minors_checked == 329, || format!("{cert:?}"))?;
    Ok(format!("A = {:.3}, B = {:.3}; 20475 numeric minors; 329 positivity certificates", b.lower, b.upper))
}

fn evans_harness() -> Outcome {
    let mut counts = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let a: Vec<u64> = (1..p).collect();
        let b: Vec<u64> = (0..p).collect();
        let r = evans_all_minors_check(p, &a, &b, &CheckOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("N = {p}: vanishing minor {:?}", r.witness))?;
        let expected = binomial(2 * p - 1, p - 1);
        ensure(r.minors_checked == expected, || format!("N = {p}: {} minors, expected {expected}", r.minors_checked))?;
        counts.push(r.minors_checked);
    }
    ensure(counts[2] == 126 && counts[3] == 1716, || format!("counts {counts:?}"))?;
    Ok(format!("minor counts {counts:?}, no failures"))
}

fn acm_equivalence() -> Outcome {
    let opts = CheckOptions::default();
    let mut checked = 0usize;
    for n in [4u64, 8, 9, 6] {
        for mask in 0u64..(1 << n) {
            let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let spark = dft_submatrix_full_spark(n, &set, &opts).map_err(|e| e.to_string())?;
            let uniform = uniform_distribution_check(n, &set);
            let ok = if n == 6 { !spark || uniform } else { spark == uniform };
            ensure(ok, || format!("N = {n}, set {set:?}: full spark {spark}, uniform {uniform}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets, zero mismatches"))
}

fn even_n_deficiency() -> Outcome {
    let group = SemidirectGroup::from_parts(6, &[1, 5]).map_err(|e| e.to_string())?;
    let verdict = deficiency_verdict(&group, 1);
    ensure(verdict.verdict == Verdict::Deficient, || format!("{verdict:?}"))?;
    let rep = induced_rep(&group, 1);
    for seed in 0..5u64 {
        let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::RandomGaussian(seed), FrameMode::Exact)
            .map_err(|e| e.to_string())?;
        let cert = full_spark_exact(&frame, &SparkOptions::default()).map_err(|e| e.to_string())?;
        let pair = cert.failing_subset.clone().ok_or_else(|| format!("seed {seed}: no failing subset"))?;
        let m = frame.exact_matrix().expect("exact frame");
        let det = m.submatrix(&[0, 1], &pair).det().map_err(|e| e.to_string())?;
        ensure(cert.verdict == SparkVerdict::Deficient && pair.len() == 2 && det.is_zero(), || {
            format!("seed {seed}: {cert:?}")
        })?;
        let pattern = ErasurePattern::keeping(frame.count(), &pair).map_err(|e| e.to_string())?;
        let survivors = transmit(&frame, &random_gaussian_vector(2, seed), &pattern).map_err(|e| e.to_string())?;
        ensure(matches!(reconstruct(&frame, &survivors), Err(ErasureError::Singular { .. })), || {
            format!("seed {seed}: reconstruction from {pair:?} did not fail")
        })?;
    }
    Ok("Deficient; parallel pair found for 5 vectors; adversarial erasure defeats recovery".into())
}

fn prime_power_frame() -> Outcome {
    let frame = z9_frame();
    ensure(frame.count() == 18 && frame.dim() == 2, || format!("{}×{}", frame.dim(), frame.count()))?;
    let cert = full_spark_exact(&frame, &SparkOptions::default()).map_err(|e| e.to_string())?;
    ensure(cert.verdict == SparkVerdict::FullSpark && cert.minors_checked == 153, || format!("{cert:?}"))?;
    let numeric = frame.specialize(std::f64::consts::SQRT_2).map_err(|e| e.to_string())?;
    ensure(is_tight(&numeric, 1e-9), || "not tight".into())?;
    Ok("18 vectors in C^2, 153 nonzero minors, tight".into())
}

fn erasure_robustness() -> Outcome {
    let mut worst = 0.0f64;
    for (name, frame) in [("Z5", z5_frame()), ("Z9", z9_frame()), ("sqrt2", sqrt2_frame())] {
        let erasures = frame.count() - frame.dim();
        let r = erasure_trial(&frame, 100, erasures, 2024, 0).map_err(|e| e.to_string())?;
        ensure(r.failures == 0 && r.max_relative_error < 1e-8, || format!("{name}: {r:?}"))?;
        worst = worst.max(r.max_relative_error);
    }
    Ok(format!("300 maximal-erasure trials, worst relative error {worst:.2e}"))
}

fn convolution_characterization() -> Outcome {
    let rep = induced_rep(&SemidirectGroup::from_parts(3, &[1, 2]).map_err(|e| e.to_string())?, 1);
    let opts = SparkOptions::default();
    for seed in 0..10u64 {
        let phi = random_gaussian_vector(rep.dim(), 100 + seed);
        let conv = convolution_full_spark_test(&rep, &phi, &opts).map_err(|e| e.to_string())?;
        let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::ExplicitNumeric(phi), FrameMode::Numeric)
            .map_err(|e| e.to_string())?;
        let direct = full_spark_numeric(&frame, &opts).map_err(|e| e.to_string())?.verdict == SparkVerdict::FullSpark;
        ensure(conv == direct, || format!("seed {seed}: convolution {conv}, direct {direct}"))?;
    }
    Ok("10 of 10 verdicts agree".into())
}

/// Rational Gaussian elimination, independent of the library kernels.
fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    det
}

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

fn factorization_crosscheck() -> Outcome {
    let f = sqrt2_family();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..20 {
        let l = rng.random_range(1..=4);
        let rows = rand::seq::index::sample(&mut rng, 4, l).into_vec();
        let cols = rand::seq::index::sample(&mut rng, 7, l).into_vec();
        let (mut rows, mut cols) = (rows, cols);
        rows.sort_unstable();
        cols.sort_unstable();
        for t in [2i64, 3] {
            let r = Rational::from(t);
            let factored = factorized_minor(&f, &rows, &cols, &r);
            let poly = minor_poly(&f, &rows, &cols).map_err(|e| e.to_string())?;
            let direct = poly.eval_rational(&r);
            let oracle = rational_det(
                rows.iter()
                    .map(|&j| {
                        cols.iter()
                            .map(|&k| BigRational::from_integer(BigInt::from(t).pow(f.exponent(j, k) as u32)))
                            .collect()
                    })
                    .collect(),
            );
            ensure(direct == Cyclotomic::from_rational(direct.order(), &factored), || {
                format!("trial {trial}, t = {t}: direct {direct:?} vs factored {factored}")
            })?;
            ensure(to_big(&factored) == oracle && oracle.is_positive(), || {
                format!("trial {trial}, t = {t}: factored {factored} vs oracle {oracle}")
            })?;
        }
    }
    Ok("20 minors at t = 2 and t = 3 agree exactly".into())
}

fn determinism() -> Outcome {
    let frames = [("Z5", z5_frame()), ("sqrt2", sqrt2_frame()), ("Z9", z9_frame())];
    for (name, frame) in &frames {
        let payloads: Vec<String> = [1usize, 2, 8]
            .iter()
            .map(|&threads| {
                let opts = SparkOptions::with_threads(threads);
                let cert = match frame.mode() {
                    FrameMode::Exact => full_spark_exact(frame, &opts),
                    FrameMode::Numeric => full_spark_numeric(frame, &opts),
                };
                cert.map(|c| certificate_payload_json(&c)).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        ensure(payloads.iter().all(|p| p == &payloads[0]), || format!("{name}: payloads differ"))?;
    }
    let deficient = group_frame(6, &[1, 5], &GeneratingVector::RandomGaussian(3), FrameMode::Exact);
    let payloads: Vec<String> = [1usize, 2, 8]
        .iter()
        .map(|&t| certificate_payload_json(&full_spark_exact(&deficient, &SparkOptions::with_threads(t)).expect("budget")))
        .collect();
    ensure(payloads.iter().all(|p| p == &payloads[0]), || "deficient payloads differ".into())?;
    Ok("payloads byte-identical across 1, 2 and 8 threads".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Z5 ⋊ Z4 full spark tight frame", z5_reproduction),
        ("sqrt2 family bounds and certificates", sqrt2_reproduction),
        ("prime-order minors harness", evans_harness),
        ("DFT full spark vs uniform distribution", acm_equivalence),
        ("even modulus deficiency", even_n_deficiency),
        ("prime-power modulus frame", prime_power_frame),
        ("erasure robustness", erasure_robustness),
        ("convolution characterization", convolution_characterization),
        ("Schur factorization cross-check", factorization_crosscheck),
        ("thread-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
