//! Generalized Vandermonde family with transcendental base: a positivity
//! certificate for every minor, then a numeric frame at t = √2.

use num_complex::Complex64;
use sparkframe::criteria::CheckOptions;
use sparkframe::framecore::{
    frame_bounds, full_spark_numeric, orbit_frame, FrameMode, GeneratingVector, OrbitFamily, SparkOptions,
};
use sparkframe::genfamily::{certify_family_full_spark, ExponentFamily, Tau};

fn main() {
    let family = ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).expect("family");
    let cert = certify_family_full_spark(&family, &CheckOptions::default()).expect("within budget");
    println!("certified: {} ({} minors)", cert.certified, cert.minors_checked);

    let v = GeneratingVector::ExplicitNumeric([1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0)).to_vec());
    let frame = orbit_frame(OrbitFamily::Exponent(&family), &v, FrameMode::Numeric).expect("frame");
    let b = frame_bounds(&frame);
    println!("{} vectors in C^{}, bounds [{:.3}, {:.3}]", frame.count(), frame.dim(), b.lower, b.upper);

    let spark = full_spark_numeric(&frame, &SparkOptions::default()).expect("within budget");
    println!(
        "{:?}: {} minors, smallest normalized |det| {:.3e}",
        spark.verdict,
        spark.minors_checked,
        spark.min_abs_det.unwrap_or(f64::NAN)
    );
}
