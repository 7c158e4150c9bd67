//! Row subsets of the DFT: full spark of the submatrix against uniform
//! distribution of the index set over the divisors of N.

use sparkframe::criteria::{dft_submatrix_full_spark, uniform_distribution_check, CheckOptions};

fn main() {
    let opts = CheckOptions::default();
    for n in [4u64, 6, 8, 9] {
        let (mut agree, mut total) = (0, 0);
        for mask in 1u64..(1 << n) {
            let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let spark = dft_submatrix_full_spark(n, &set, &opts).expect("small N");
            let uniform = uniform_distribution_check(n, &set);
            total += 1;
            agree += usize::from(spark == uniform);
        }
        println!("N = {n}: criteria agree on {agree} of {total} subsets");
    }
}
