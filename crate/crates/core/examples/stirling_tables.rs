//! Classical and degenerate Stirling triangles, and their orthogonality.

use degenerate_bell::scalar::{self, ratio};
use degenerate_bell::stirling::{stirling_table, verify_inversion, StirlingKind};

pub fn run_example() {
    let lambda = ratio(1, 2);
    for kind in StirlingKind::ALL {
        let table = stirling_table(kind, &lambda, 5);
        println!("{kind} (λ = {}):", scalar::render(table.lambda()));
        for row in table.values().rows() {
            let cells: Vec<String> = row.iter().map(scalar::render).collect();
            println!("  {}", cells.join(" "));
        }
    }

    // S₂,λ collapses to δ_{nk} at λ = 1.
    let identity = stirling_table(StirlingKind::Degenerate2, &ratio(1, 1), 6);
    assert!((0..=6).all(|n| (0..=n).all(|k| identity.get(n, k) == ratio((n == k) as i64, 1))));

    for lambda in [ratio(0, 1), ratio(1, 2), ratio(-1, 3), ratio(2, 1)] {
        verify_inversion(&lambda, 12).unwrap_or_else(|c| panic!("{c}"));
    }
    println!("first and second kinds invert each other for n ≤ 12");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
