//! Charlier polynomials and their links to the degenerate Bell family.

use degenerate_bell::charlier::{self, CharlierPath};
use degenerate_bell::scalar::{self, int, ratio};
use degenerate_bell::tables::Tables;

pub fn run_example() {
    let (x, alpha) = (int(3), int(1));
    for n in 0..=5 {
        let values: Vec<_> = [
            CharlierPath::GeneratingFunction,
            CharlierPath::Explicit,
            CharlierPath::Degenerate(ratio(1, 2)),
            CharlierPath::Degenerate(int(-2)),
        ]
        .iter()
        .map(|path| charlier::charlier(n, &x, &alpha, path))
        .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
        println!("C_{n}(3;1) = {}", scalar::render(&values[0]));
    }

    let lambda = ratio(-1, 3);
    let (a, b) = (ratio(1, 2), int(3));
    charlier::verify_central_bell(&lambda, &a, 10).unwrap_or_else(|c| panic!("{c}"));
    charlier::verify_bell_from_charlier(&lambda, &a, &b, 10).unwrap_or_else(|c| panic!("{c}"));
    charlier::verify_charlier_from_bell(&lambda, &a, &b, 10).unwrap_or_else(|c| panic!("{c}"));
    let tables = Tables::build(&lambda, 10);
    assert!(charlier::mutual_inversion_checks(&tables, &a, &b)
        .iter()
        .all(|c| c.passed()));
    println!("Bell and Charlier expansions invert each other at λ = -1/3");

    // S₁(n,k) in place of S₁(k,l) breaks the explicit form immediately.
    let first = charlier::first_transposed_failure(&x, &alpha, 8);
    println!("transposed explicit form first differs at n = {first:?}");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
