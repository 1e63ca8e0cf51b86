//! Poisson degenerate moments: rigorous partial sums and seeded Monte Carlo
//! against the exact polynomial value.

use degenerate_bell::bell::{two_variable_bell, BellPath};
use degenerate_bell::poisson::{poisson_degenerate_moment, poisson_sample_moment};
use degenerate_bell::scalar::{self, int, ratio};

pub fn run_example() {
    let (lambda, alpha, beta) = (ratio(1, 2), int(3), int(2));
    for n in 0..=5 {
        let exact = two_variable_bell(n, &lambda, &alpha, &beta, BellPath::GeneratingFunction);
        let sum = poisson_degenerate_moment(n, &lambda, &alpha, &beta, 1e-30).expect("α > 0");
        let mc = poisson_sample_moment(n, &lambda, &alpha, &beta, 200_000, 42).expect("α > 0");
        assert!(sum.covers(&exact) && mc.covers(&exact));
        println!(
            "n={n}: exact {} | partial sum {} ± {:.1e} ({} terms) | Monte Carlo {:.4} ± {:.4}",
            scalar::render(&exact),
            scalar::to_decimal_string(&sum.value, 32),
            sum.error_bound_f64(),
            sum.count,
            mc.value_f64(),
            mc.error_bound_f64(),
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
