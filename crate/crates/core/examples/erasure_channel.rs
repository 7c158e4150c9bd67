//! Erasure recovery on a full spark frame and on a deficient one.

use sparkframe::erasure::{erasure_trial, reconstruct, transmit, ErasurePattern};
use sparkframe::framecore::{full_spark_exact, orbit_frame, random_gaussian_vector, FrameMode, GeneratingVector, OrbitFamily, SparkOptions};
use sparkframe::groups::{induced_rep, SemidirectGroup};

fn main() {
    let rep = induced_rep(&SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).expect("subgroup"), 1);
    let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::monomial_squares(4), FrameMode::Exact)
        .expect("frame");
    let report = erasure_trial(&frame, 100, frame.count() - frame.dim(), 42, 0).expect("trials");
    println!("{report:?}");

    let rep6 = induced_rep(&SemidirectGroup::from_parts(6, &[1, 5]).expect("subgroup"), 1);
    let bad = orbit_frame(OrbitFamily::Group(&rep6), &GeneratingVector::monomial_squares(2), FrameMode::Exact)
        .expect("frame");
    let cert = full_spark_exact(&bad, &SparkOptions::default()).expect("budget");
    let keep = cert.failing_subset.expect("deficient");
    let pattern = ErasurePattern::keeping(bad.count(), &keep).expect("pattern");
    let survivors = transmit(&bad, &random_gaussian_vector(2, 1), &pattern).expect("transmit");
    match reconstruct(&bad, &survivors) {
        Ok(r) => println!("recovered with residual {:.2e}", r.residual),
        Err(e) => println!("keeping only {keep:?}: {e}"),
    }
}
