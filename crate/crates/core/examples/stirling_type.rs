//! Stirling-type numbers `S_λ(n,k)` and the two expansions built on them.

use degenerate_bell::bell::{self, stirling_type_table};
use degenerate_bell::check::first_failure;
use degenerate_bell::scalar::{self, int, ratio};
use degenerate_bell::tables::Tables;

pub fn run_example() {
    let lambda = ratio(1, 2);
    let table = stirling_type_table(&lambda, 5);
    println!("S_λ(n,k), λ = 1/2:");
    for row in table.values().rows() {
        let cells: Vec<String> = row.iter().map(scalar::render).collect();
        println!("  {}", cells.join(" "));
    }

    for alpha in [ratio(1, 2), int(1), int(3)] {
        bell::verify_rising_expansion(&lambda, &alpha, 10).unwrap_or_else(|c| panic!("{c}"));
        bell::verify_inverse_expansion(&lambda, &alpha, 10).unwrap_or_else(|c| panic!("{c}"));
    }
    println!("rising and inverse expansions hold as weighted sums for n ≤ 10");

    // Matching the inverse expansion term by term only works at λ = 0.
    let tables = Tables::build(&lambda, 4);
    match first_failure(bell::inverse_expansion_coefficientwise(&tables, &int(1))) {
        Err(c) => println!("coefficient-wise reading fails first at {c}"),
        Ok(()) => unreachable!("expected a coefficient mismatch for λ ≠ 0"),
    }
    let classical = Tables::build(&int(0), 8);
    assert!(first_failure(bell::inverse_expansion_coefficientwise(&classical, &int(1))).is_ok());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
