//! Minors of a generalized Vandermonde family factor as a power of t times
//! a Vandermonde product times a Schur polynomial.

use sparkframe::exactalg::Rational;
use sparkframe::genfamily::{factorization_crosscheck, factorized_minor, minor_at_two, ExponentFamily, Tau};

fn main() {
    let family = ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).expect("family");
    let two = Rational::from(2);
    for (rows, cols) in [(vec![0, 1], vec![2, 5]), (vec![1, 2, 3], vec![0, 3, 6]), (vec![0, 1, 2, 3], vec![1, 2, 4, 6])] {
        let direct = minor_at_two(&family, &rows, &cols).expect("minor");
        let factored = factorized_minor(&family, &rows, &cols, &two);
        let ok = factorization_crosscheck(&family, &rows, &cols, &Rational::from(3)).expect("crosscheck");
        println!("rows {rows:?} cols {cols:?}: P(2) = {direct}, factored {factored}, t = 3 agrees: {ok}");
    }
}
