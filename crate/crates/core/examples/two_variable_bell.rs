//! `Bel_{n,λ}(α,β)` along every evaluation route.

use degenerate_bell::bell::{bell_poly, degenerate_bell_poly, two_variable_bell, BellPath};
use degenerate_bell::scalar::{self, int, ratio};

pub fn run_example() {
    let (lambda, alpha, beta) = (ratio(1, 2), int(2), int(1));
    for n in 0..=6 {
        let values: Vec<_> = BellPath::ALL
            .iter()
            .map(|&path| two_variable_bell(n, &lambda, &alpha, &beta, path))
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
        println!("Bel_{n},1/2(2,1) = {}", scalar::render(&values[0]));
    }

    let bells: Vec<String> = (0..=8)
        .map(|n| scalar::render(&bell_poly(n, &int(1))))
        .collect();
    println!("Bell numbers: {}", bells.join(", "));

    // Bel_{n,λ}(α,α) is the one-variable degenerate Bell polynomial.
    let x = ratio(-1, 3);
    for n in 0..=8 {
        let diagonal = two_variable_bell(n, &lambda, &x, &x, BellPath::GeneratingFunction);
        assert_eq!(diagonal, degenerate_bell_poly(n, &lambda, &x));
    }
    println!("diagonal matches Bel_n,λ(x) at x = -1/3");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
