//! Truncated power series: degenerate exponential and logarithm, and the
//! Stirling columns read off `f(t)^k / k!`.

use degenerate_bell::scalar::{self, int, ratio};
use degenerate_bell::series::{
    default_order, degenerate_exp, degenerate_exp_minus_one, degenerate_log, Series,
};
use degenerate_bell::stirling::{oracle_checks, stirling_table, StirlingKind};

pub fn run_example() {
    let lambda = ratio(1, 3);
    let order = default_order(6);

    let e = degenerate_exp(&int(2), &lambda, order);
    let egf: Vec<String> = e.egf_coefficients(6).iter().map(scalar::render).collect();
    println!("e_λ^2(t), λ = 1/3, EGF coefficients: {}", egf.join(", "));

    // log_λ(1 + (e_λ(t) - 1)) = t.
    let round_trip = degenerate_log(&lambda, order)
        .compose(&degenerate_exp_minus_one(&lambda, order))
        .expect("inner series has no constant term");
    assert_eq!(round_trip, Series::t(order));
    println!("log_λ inverts e_λ - 1 through order {order}");

    for kind in StirlingKind::ALL {
        let table = stirling_table(kind, &lambda, 12);
        let checks = oracle_checks(&table);
        assert!(checks.iter().all(|c| c.passed()));
        println!("{kind}: {} entries match the series oracle", checks.len());
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
