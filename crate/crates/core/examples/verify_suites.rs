//! Running verification suites and reading the JSON report.
//!
//! `cargo run --release --example verify_suites -- t1` runs a single suite
//! on the default grid; without an argument a reduced grid covers all.

use degenerate_bell::scalar::int;
use degenerate_bell::verify::{run_suite, Corruption, Grid, Suite, SuiteOptions};

pub fn run_example() {
    let options = SuiteOptions {
        grid: Grid {
            monte_carlo_samples: 50_000,
            ..Grid::default()
        }
        .capped(6),
        seed: 42,
        ..SuiteOptions::default()
    };
    let report = run_suite(Suite::All, &options).expect("valid grid");
    println!(
        "all (n ≤ 6): {} cases, {} failed",
        report.cases_total, report.cases_failed
    );
    assert!(report.passed());

    let corrupted = SuiteOptions {
        corruption: Some(Corruption {
            n: 4,
            k: 2,
            delta: int(1),
        }),
        ..options
    };
    let report = run_suite(Suite::Inversion, &corrupted).expect("valid grid");
    let first = &report.failures[0];
    println!(
        "with S2,λ(4,2) off by one: {} failures, first {}",
        report.cases_failed,
        serde_json::to_string(first).unwrap()
    );
}

#[allow(dead_code)]
fn main() {
    match std::env::args().nth(1) {
        Some(name) => {
            let suite: Suite = name.parse().unwrap_or_else(|e| panic!("{e}"));
            let report = run_suite(
                suite,
                &SuiteOptions {
                    seed: 42,
                    ..SuiteOptions::default()
                },
            )
            .unwrap();
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        None => run_example(),
    }
}
