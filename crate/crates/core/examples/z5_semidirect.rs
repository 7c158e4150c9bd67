//! Orbit frame of the 4-dimensional irreducible representation of Z5 ⋊ Z4,
//! certified full spark in exact arithmetic.

use sparkframe::framecore::{
    frame_bounds, full_spark_exact, is_tight, orbit_frame, FrameMode, GeneratingVector, OrbitFamily, SparkOptions,
};
use sparkframe::groups::{induced_rep, SemidirectGroup};

fn main() {
    let group = SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).expect("valid subgroup");
    let rep = induced_rep(&group, 1);
    println!("h enumeration: {:?}", rep.h_enumeration());
    println!("diagonal exponents: {:?}", rep.diagonal_exponents(1));

    let v = GeneratingVector::monomial_squares(rep.dim());
    let frame = orbit_frame(OrbitFamily::Group(&rep), &v, FrameMode::Exact).expect("frame");
    let cert = full_spark_exact(&frame, &SparkOptions::default()).expect("within budget");
    println!("{:?} after {} minors", cert.verdict, cert.minors_checked);

    let numeric = frame.specialize(1.7).expect("specialize");
    let b = frame_bounds(&numeric);
    println!("bounds at t = 1.7: [{:.6}, {:.6}], tight: {}", b.lower, b.upper, is_tight(&numeric, 1e-9));
}
