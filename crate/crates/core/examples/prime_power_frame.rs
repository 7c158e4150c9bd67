//! Z9 ⋊ {±1}: a non-prime modulus whose orbit frame is still full spark.

use sparkframe::framecore::{full_spark_exact, is_tight, orbit_frame, FrameMode, GeneratingVector, OrbitFamily, SparkOptions};
use sparkframe::groups::{deficiency_verdict, induced_rep, SemidirectGroup};

fn main() {
    let group = SemidirectGroup::from_parts(9, &[1, 8]).expect("subgroup");
    println!("{:?}", deficiency_verdict(&group, 1).verdict);
    let rep = induced_rep(&group, 1);
    let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::monomial_squares(2), FrameMode::Exact)
        .expect("frame");
    let cert = full_spark_exact(&frame, &SparkOptions::default()).expect("budget");
    println!("{:?} after {} minors", cert.verdict, cert.minors_checked);
    println!("tight: {}", is_tight(&frame.specialize(1.3).expect("specialize"), 1e-9));
}
