//! Writes a frame to JSON, reads it back, and prints the certificate file.

use sparkframe::framecore::{full_spark, orbit_frame, FrameMode, GeneratingVector, OrbitFamily, SparkOptions};
use sparkframe::groups::{induced_rep, SemidirectGroup};
use sparkframe::io::{certificate_payload_json, frame_from_json, frame_to_json};

fn main() {
    let rep = induced_rep(&SemidirectGroup::from_parts(7, &[1, 2, 4]).expect("subgroup"), 1);
    let frame = orbit_frame(OrbitFamily::Group(&rep), &GeneratingVector::RandomGaussian(9), FrameMode::Exact)
        .expect("frame");
    let json = frame_to_json(&frame);
    let back = frame_from_json(&json).expect("round trip");
    assert_eq!(back, frame);
    let cert = full_spark(&back, &SparkOptions::default()).expect("budget");
    println!("{}", certificate_payload_json(&cert));
}
