//! Named verification suites over parameter grids, reported as [`RunReport`].
//!
//! Identity ids in the report (`Failure::identity`) and the parameter keys
//! (`lambda`, `alpha`, `beta`, `x`, `n`, `k`, `kind`) are stable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{self, BellPath};
use crate::charlier;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::poisson;
use crate::scalar::{self, int, ratio, Scalar};
use crate::series;
use crate::stirling::{self, StirlingKind};
use crate::tables::Tables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    T1,
    T2,
    T3,
    T4,
    T5,
    L6,
    L7,
    T8,
    T9,
    Inversion,
    Poisson,
    Degeneration,
    Oracle,
    Transposed,
}

impl Suite {
    /// Everything `All` expands to, in report order.
    pub const EACH: [Suite; 14] = [
        Suite::T1,
        Suite::T2,
        Suite::T3,
        Suite::T4,
        Suite::T5,
        Suite::L6,
        Suite::L7,
        Suite::T8,
        Suite::T9,
        Suite::Inversion,
        Suite::Poisson,
        Suite::Degeneration,
        Suite::Oracle,
        Suite::Transposed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::T1 => "t1",
            Suite::T2 => "t2",
            Suite::T3 => "t3",
            Suite::T4 => "t4",
            Suite::T5 => "t5",
            Suite::L6 => "l6",
            Suite::L7 => "l7",
            Suite::T8 => "t8",
            Suite::T9 => "t9",
            Suite::Inversion => "inversion",
            Suite::Poisson => "poisson",
            Suite::Degeneration => "degeneration",
            Suite::Oracle => "oracle",
            Suite::Transposed => "transposed",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite `{s}`")))
    }
}

/// Parameter grids. The defaults are the documented ones.
#[derive(Clone, Debug)]
pub struct Grid {
    /// λ values for the exact suites.
    pub lambdas: Vec<Scalar>,
    /// λ values for the Stirling-type and probabilistic suites.
    pub moment_lambdas: Vec<Scalar>,
    /// Values used for α, β and x in the exact suites.
    pub points: Vec<Scalar>,
    /// Positive α values for the Stirling-type and probabilistic suites.
    pub positive_alphas: Vec<Scalar>,
    /// Largest n for the Bell and Stirling suites.
    pub max_n: usize,
    /// Largest n for the Stirling-type, Charlier and partial-sum suites.
    pub connection_max_n: usize,
    /// Largest n for Monte Carlo.
    pub monte_carlo_max_n: usize,
    /// Largest n for the transposed-index regression.
    pub transposed_max_n: usize,
    pub monte_carlo_samples: u64,
    pub precision_target: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            lambdas: vec![int(0), ratio(1, 2), ratio(-1, 3), int(2)],
            moment_lambdas: vec![int(0), ratio(1, 2), ratio(-1, 3)],
            points: vec![int(-2), int(0), ratio(1, 2), int(1), int(3)],
            positive_alphas: vec![ratio(1, 2), int(1), int(3)],
            max_n: 12,
            connection_max_n: 10,
            monte_carlo_max_n: 6,
            transposed_max_n: 8,
            monte_carlo_samples: 1_000_000,
            precision_target: 1e-20,
        }
    }
}

impl Grid {
    /// Caps every `*max_n` at `cap`.
    pub fn capped(mut self, cap: usize) -> Self {
        self.max_n = self.max_n.min(cap);
        self.connection_max_n = self.connection_max_n.min(cap);
        self.monte_carlo_max_n = self.monte_carlo_max_n.min(cap);
        self.transposed_max_n = self.transposed_max_n.min(cap);
        self
    }

    /// β values paired with a positive α in the probabilistic suites:
    /// `0`, `α` and `2`.
    fn moment_betas(alpha: &Scalar) -> [Scalar; 3] {
        [Scalar::zero(), alpha.clone(), int(2)]
    }
}

/// Adds `delta` to `S₂,λ(n, k)` in every table a suite reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corruption {
    pub n: usize,
    pub k: usize,
    pub delta: Scalar,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub grid: Grid,
    pub seed: u64,
    pub corruption: Option<Corruption>,
    /// Record `wall_time_ms`; off keeps reports byte-reproducible.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub cases_total: u64,
    pub cases_failed: u64,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }
}

/// Checks produced under one parameter assignment.
struct Batch {
    params: Vec<(&'static str, String)>,
    checks: Vec<Check>,
}

impl Batch {
    fn new(params: &[(&'static str, &Scalar)], checks: Vec<Check>) -> Self {
        Batch {
            params: params
                .iter()
                .map(|(k, v)| (*k, scalar::render(v)))
                .collect(),
            checks,
        }
    }

    fn tagged(mut self, key: &'static str, value: impl ToString) -> Self {
        self.params.push((key, value.to_string()));
        self
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn absorb(&mut self, batch: Batch) {
        for check in batch.checks {
            self.total += 1;
            if check.passed() {
                continue;
            }
            let mut params: BTreeMap<String, String> = batch
                .params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            params.insert("n".into(), check.n.to_string());
            if let Some(k) = check.k {
                params.insert("k".into(), k.to_string());
            }
            self.failures.push(Failure {
                identity: check.identity.to_string(),
                params,
                lhs: scalar::render(&check.lhs),
                rhs: scalar::render(&check.rhs),
                tolerance: (!check.tolerance.is_zero()).then(|| scalar::render(&check.tolerance)),
            });
        }
    }
}

fn build_tables(lambda: &Scalar, max_n: usize, options: &SuiteOptions) -> Tables {
    let tables = Tables::build(lambda, max_n);
    match &options.corruption {
        Some(c) => tables.with_corrupted_s2deg(c.n, c.k, &c.delta),
        None => tables,
    }
}

/// Runs `suite` and times it if requested.
pub fn run_suite(suite: Suite, options: &SuiteOptions) -> Result<RunReport> {
    let start = Instant::now();
    let mut tally = Tally::default();
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        single => vec![single],
    };
    for part in parts {
        for batch in batches(part, options)? {
            tally.absorb(batch);
        }
    }
    Ok(RunReport {
        suite: suite.name().to_string(),
        cases_total: tally.total,
        cases_failed: tally.failures.len() as u64,
        failures: tally.failures,
        wall_time_ms: if options.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Runs `f` for every λ in parallel and concatenates in λ order.
fn per_lambda<F>(lambdas: &[Scalar], f: F) -> Vec<Batch>
where
    F: Fn(&Scalar) -> Vec<Batch> + Sync + Send,
{
    lambdas
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn batches(suite: Suite, options: &SuiteOptions) -> Result<Vec<Batch>> {
    let grid = &options.grid;
    let out = match suite {
        Suite::All => unreachable!("expanded by run_suite"),
        Suite::T1 => per_lambda(&grid.lambdas, |lambda| {
            let tables = build_tables(lambda, grid.max_n, options);
            let mut out = Vec::new();
            for alpha in &grid.points {
                out.push(Batch::new(
                    &[("lambda", lambda), ("alpha", alpha), ("beta", alpha)],
                    bell::diagonal_checks(&tables, alpha),
                ));
                for beta in &grid.points {
                    out.push(Batch::new(
                        &[("lambda", lambda), ("alpha", alpha), ("beta", beta)],
                        bell::path_checks(&tables, alpha, beta, &[BellPath::BellConvolution]),
                    ));
                }
            }
            out
        }),
        Suite::T3 => per_lambda(&grid.lambdas, |lambda| {
            let tables = build_tables(lambda, grid.max_n, options);
            let mut out = Vec::new();
            for alpha in &grid.points {
                for beta in &grid.points {
                    out.push(Batch::new(
                        &[("lambda", lambda), ("alpha", alpha), ("beta", beta)],
                        bell::path_checks(
                            &tables,
                            alpha,
                            beta,
                            &[BellPath::StirlingDoubleSum, BellPath::CentralMoments],
                        ),
                    ));
                }
            }
            out
        }),
        Suite::T2 => {
            let mut out = Vec::new();
            for alpha in &grid.points {
                for beta in &grid.points {
                    out.push(Batch::new(
                        &[
                            ("lambda", &Scalar::zero()),
                            ("alpha", alpha),
                            ("beta", beta),
                        ],
                        bell::classical_shift_checks(alpha, beta, grid.max_n),
                    ));
                }
            }
            out.extend(partial_sum_batches(options)?);
            out
        }
        Suite::T4 => per_lambda(&grid.moment_lambdas, |lambda| {
            let tables = build_tables(lambda, grid.connection_max_n, options);
            grid.positive_alphas
                .iter()
                .map(|alpha| {
                    let mut checks = bell::rising_expansion_checks(&tables, alpha);
                    checks.extend(bell::stirling_type_reconstruction_checks(&tables, alpha));
                    Batch::new(&[("lambda", lambda), ("alpha", alpha)], checks)
                })
                .collect()
        }),
        Suite::T5 => per_lambda(&grid.moment_lambdas, |lambda| {
            let tables = build_tables(lambda, grid.connection_max_n, options);
            grid.positive_alphas
                .iter()
                .map(|alpha| {
                    Batch::new(
                        &[("lambda", lambda), ("alpha", alpha)],
                        bell::inverse_expansion_checks(&tables, alpha),
                    )
                })
                .collect()
        }),
        Suite::L6 => {
            let all: Vec<Tables> = grid
                .lambdas
                .iter()
                .map(|l| build_tables(l, grid.connection_max_n, options))
                .collect();
            let mut out = Vec::new();
            for tables in &all {
                for x in &grid.points {
                    for alpha in &grid.points {
                        out.push(Batch::new(
                            &[("lambda", tables.lambda()), ("x", x), ("alpha", alpha)],
                            charlier::path_agreement_checks(tables, x, alpha),
                        ));
                    }
                }
            }
            for x in &grid.points {
                for alpha in &grid.points {
                    out.push(Batch::new(
                        &[("x", x), ("alpha", alpha)],
                        charlier::lambda_independence_checks(&all, x, alpha),
                    ));
                }
            }
            out
        }
        Suite::L7 => per_lambda(&grid.lambdas, |lambda| {
            let tables = build_tables(lambda, grid.connection_max_n, options);
            grid.points
                .iter()
                .map(|alpha| {
                    Batch::new(
                        &[("lambda", lambda), ("alpha", alpha)],
                        charlier::central_bell_checks(&tables, alpha),
                    )
                })
                .collect()
        }),
        Suite::T8 | Suite::T9 => per_lambda(&grid.lambdas, |lambda| {
            let tables = build_tables(lambda, grid.connection_max_n, options);
            let mut out = Vec::new();
            for alpha in &grid.points {
                for beta in &grid.points {
                    let checks = if suite == Suite::T8 {
                        charlier::bell_from_charlier_checks(&tables, alpha, beta)
                    } else {
                        let mut c = charlier::charlier_from_bell_checks(&tables, alpha, beta);
                        c.extend(charlier::mutual_inversion_checks(&tables, alpha, beta));
                        c
                    };
                    out.push(Batch::new(
                        &[("lambda", lambda), ("alpha", alpha), ("beta", beta)],
                        checks,
                    ));
                }
            }
            out
        }),
        Suite::Inversion => {
            let mut out = per_lambda(&grid.lambdas, |lambda| {
                let tables = build_tables(lambda, grid.max_n, options);
                vec![Batch::new(
                    &[("lambda", lambda)],
                    stirling::orthogonality_checks(
                        "stirling.inversion.degenerate",
                        &tables.s1deg,
                        &tables.s2deg,
                    ),
                )]
            });
            let tables = build_tables(&Scalar::zero(), grid.max_n, options);
            out.push(Batch::new(
                &[],
                stirling::orthogonality_checks(
                    "stirling.inversion.classical",
                    &tables.s1,
                    &tables.s2,
                ),
            ));
            out
        }
        Suite::Poisson => poisson_batches(options)?,
        Suite::Degeneration => degeneration_batches(options),
        Suite::Oracle => {
            let mut lambdas = grid.lambdas.clone();
            if !lambdas.contains(&Scalar::one()) {
                lambdas.push(Scalar::one());
            }
            per_lambda(&lambdas, |lambda| {
                let tables = build_tables(lambda, grid.max_n, options);
                StirlingKind::ALL
                    .iter()
                    .filter(|kind| kind.is_degenerate() || lambda.is_zero())
                    .map(|&kind| {
                        Batch::new(
                            &[("lambda", lambda)],
                            stirling::oracle_checks(tables.get(kind)),
                        )
                        .tagged("kind", kind)
                    })
                    .collect()
            })
        }
        Suite::Transposed => {
            let tables = build_tables(&Scalar::zero(), grid.transposed_max_n, options);
            let mut out = Vec::new();
            for x in &grid.points {
                for alpha in &grid.points {
                    out.push(Batch::new(
                        &[("x", x), ("alpha", alpha)],
                        charlier::coefficient_form_checks(&tables, x, alpha),
                    ));
                }
            }
            // The transposed layout must be caught somewhere on the grid.
            let detected = grid.points.iter().any(|x| {
                grid.points.iter().any(|alpha| {
                    charlier::first_transposed_failure(x, alpha, grid.transposed_max_n).is_some()
                })
            });
            let flag = |b: bool| if b { Scalar::one() } else { Scalar::zero() };
            out.push(Batch::new(
                &[],
                vec![Check::new(
                    "charlier.transposed-detected",
                    grid.transposed_max_n,
                    flag(detected),
                    Scalar::one(),
                )],
            ));
            out
        }
    };
    Ok(out)
}

fn partial_sum_batches(options: &SuiteOptions) -> Result<Vec<Batch>> {
    let grid = &options.grid;
    let target = scalar::from_f64(grid.precision_target)
        .ok_or_else(|| Error::Parameter("precision target must be finite".into()))?;
    let cases: Vec<(Scalar, Scalar, Scalar)> = grid
        .moment_lambdas
        .iter()
        .flat_map(|l| {
            grid.positive_alphas.iter().flat_map(move |a| {
                Grid::moment_betas(a)
                    .into_iter()
                    .map(move |b| (l.clone(), a.clone(), b))
            })
        })
        .collect();
    cases
        .par_iter()
        .map(|(lambda, alpha, beta)| {
            let tables = build_tables(lambda, grid.connection_max_n, options);
            let exact = bell::two_variable_bell_series(lambda, alpha, beta, grid.connection_max_n);
            let mut checks = Vec::new();
            for (n, exact) in exact.iter().enumerate() {
                let est = poisson::poisson_degenerate_moment(
                    n,
                    lambda,
                    alpha,
                    beta,
                    grid.precision_target,
                )?;
                checks.push(poisson::coverage_check("poisson.partial-sum", &est, exact));
                checks.push(Check::within(
                    "poisson.error-bound",
                    n,
                    est.error_bound.clone(),
                    Scalar::zero(),
                    target.clone(),
                ));
                // Same estimate against the table-backed convolution route.
                let conv = bell::two_variable_bell_with(
                    &tables,
                    n,
                    alpha,
                    beta,
                    BellPath::BellConvolution,
                );
                checks.push(poisson::coverage_check(
                    "poisson.partial-sum-convolution",
                    &est,
                    &conv,
                ));
            }
            Ok(Batch::new(
                &[("lambda", lambda), ("alpha", alpha), ("beta", beta)],
                checks,
            ))
        })
        .collect()
}

fn poisson_batches(options: &SuiteOptions) -> Result<Vec<Batch>> {
    let grid = &options.grid;
    let mut out = Vec::new();
    for lambda in &grid.moment_lambdas {
        let tables = build_tables(lambda, grid.connection_max_n, options);
        for alpha in &grid.positive_alphas {
            let mut checks = Vec::new();
            // E[(X)_{n,λ}] = Bel_{n,λ}(α).
            for n in 0..=grid.connection_max_n {
                let est = poisson::poisson_degenerate_moment(
                    n,
                    lambda,
                    alpha,
                    alpha,
                    grid.precision_target,
                )?;
                checks.push(poisson::coverage_check(
                    "poisson.raw-moment",
                    &est,
                    &bell::degenerate_bell_from(&tables.s2deg, n, alpha),
                ));
            }
            out.push(Batch::new(&[("lambda", lambda), ("alpha", alpha)], checks));
            for beta in Grid::moment_betas(alpha) {
                let exact =
                    bell::two_variable_bell_series(lambda, alpha, &beta, grid.monte_carlo_max_n);
                let mut checks = Vec::new();
                for n in 0..=grid.connection_max_n {
                    checks.push(poisson::shift_expansion_check(
                        n,
                        lambda,
                        alpha,
                        &beta,
                        grid.precision_target,
                    )?);
                }
                for (n, exact) in exact.iter().enumerate() {
                    let est = poisson::poisson_sample_moment(
                        n,
                        lambda,
                        alpha,
                        &beta,
                        grid.monte_carlo_samples,
                        options.seed,
                    )?;
                    checks.push(poisson::coverage_check("poisson.monte-carlo", &est, exact));
                }
                out.push(Batch::new(
                    &[("lambda", lambda), ("alpha", alpha), ("beta", &beta)],
                    checks,
                ));
            }
        }
    }
    Ok(out)
}

fn degeneration_batches(options: &SuiteOptions) -> Vec<Batch> {
    let grid = &options.grid;
    let max_n = grid.max_n;
    let zero = Scalar::zero();
    let tables = build_tables(&zero, max_n, options);
    let mut out = Vec::new();

    for (deg, classical) in [(&tables.s1deg, &tables.s1), (&tables.s2deg, &tables.s2)] {
        let mut checks = Vec::new();
        for n in 0..=max_n {
            for k in 0..=n {
                checks.push(Check::at(
                    "degeneration.stirling",
                    n,
                    k,
                    deg.get(n, k),
                    classical.get(n, k),
                ));
            }
        }
        out.push(Batch::new(&[], checks).tagged("kind", deg.kind()));
    }

    let order = series::default_order(max_n);
    let mut checks = Vec::new();
    let exp_t = series::Series::t(order).exp().expect("zero constant term");
    let log = series::degenerate_log(&zero, order);
    let log_direct = series::Series::from_coeffs(
        (0..=order)
            .map(|n| {
                if n == 0 {
                    zero.clone()
                } else {
                    scalar::sign_power(n - 1) / int(n as i64)
                }
            })
            .collect(),
        order,
    );
    let exp_log = exp_t
        .sub(&series::Series::one(order))
        .and_then(|e| log.compose(&e));
    for n in 0..=max_n {
        checks.push(Check::new(
            "degeneration.exp",
            n,
            series::degenerate_exp(&Scalar::one(), &zero, order).egf_coefficient(n),
            exp_t.egf_coefficient(n),
        ));
        checks.push(Check::new(
            "degeneration.log",
            n,
            log.coeff(n),
            log_direct.coeff(n),
        ));
        if let Ok(ref t) = exp_log {
            checks.push(Check::new(
                "degeneration.log-inverts-exp",
                n,
                t.coeff(n),
                if n == 1 { Scalar::one() } else { zero.clone() },
            ));
        }
    }
    out.push(Batch::new(&[("lambda", &zero)], checks));

    for x in &grid.points {
        let mut checks = Vec::new();
        let diag = bell::two_variable_bell_series(&zero, x, x, max_n);
        for n in 0..=max_n {
            let classical = bell::bell_poly(n, x);
            checks.push(Check::new(
                "degeneration.bell",
                n,
                bell::degenerate_bell_from(&tables.s2deg, n, x),
                classical.clone(),
            ));
            checks.push(Check::new(
                "degeneration.bell2-diagonal",
                n,
                diag[n].clone(),
                classical,
            ));
        }
        for alpha in &grid.points {
            let explicit: Vec<Check> = (0..=max_n.min(grid.connection_max_n))
                .map(|n| {
                    Check::new(
                        "degeneration.charlier",
                        n,
                        charlier::charlier_with(
                            &tables,
                            n,
                            x,
                            alpha,
                            &charlier::CharlierPath::Degenerate(zero.clone()),
                        ),
                        charlier::charlier_with(
                            &tables,
                            n,
                            x,
                            alpha,
                            &charlier::CharlierPath::Explicit,
                        ),
                    )
                })
                .collect();
            out.push(Batch::new(&[("x", x), ("alpha", alpha)], explicit));
        }
        out.push(Batch::new(&[("lambda", &zero), ("alpha", x)], checks));
    }
    out
}
