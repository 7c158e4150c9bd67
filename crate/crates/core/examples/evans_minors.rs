//! Every square submatrix of (ζ_p^{a b}) over distinct residues is
//! nonsingular for prime p.

use sparkframe::criteria::{evans_all_minors_check, CheckOptions};

fn main() {
    for p in [2u64, 3, 5, 7] {
        let a: Vec<u64> = (0..p).collect();
        let r = evans_all_minors_check(p, &a, &a, &CheckOptions::default()).expect("prime modulus");
        println!("p = {p}: holds = {}, minors = {}", r.holds, r.minors_checked);
    }
}
