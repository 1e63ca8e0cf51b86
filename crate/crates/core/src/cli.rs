//! The `degen-bell` command line: `table`, `eval` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure (or disagreeing paths
//! under `--all-paths`), 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bell::{self, BellPath};
use crate::charlier::{self, CharlierPath};
use crate::error::{Error, Result};
use crate::poisson::{self, MomentEstimate, MomentMethod};
use crate::scalar::{self, Scalar};
use crate::stirling::{self, StirlingKind, Triangle};
use crate::verify::{self, Corruption, Grid, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Caps every grid's largest `n` in `verify`.
pub const MAX_N_ENV: &str = "DEGEN_BELL_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "degen-bell",
    version,
    about = "Exact degenerate Bell, Stirling and Charlier families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a triangle `T(n,k)` for `0 ≤ k ≤ n ≤ max-n`.
    Table {
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Ignored by the classical families.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate one family at the given parameters.
    Eval {
        #[arg(long, value_enum)]
        family: EvalFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Print every computation route and fail unless they agree.
        #[arg(long)]
        all_paths: bool,
        /// Absolute precision for `moment`.
        #[arg(long, default_value_t = 1e-20)]
        target: f64,
        /// Sample count for `moment-mc`.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest n in every grid (also capped by DEGEN_BELL_MAX_N).
        #[arg(long)]
        max_n: Option<usize>,
        /// Monte Carlo sample count.
        #[arg(long)]
        samples: Option<u64>,
        /// Add DELTA (default 1) to the degenerate Stirling entry S2(N,K).
        #[arg(long, value_name = "N,K[,DELTA]")]
        corrupt: Option<String>,
        /// Record wall time; without it reports are byte-reproducible.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    S1,
    S2,
    S1deg,
    S2deg,
    StirlingType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFamily {
    /// Bel_n(x).
    Bell,
    /// Bel_{n,λ}(x).
    Degbell,
    /// Bel_{n,λ}(α,β).
    Bell2,
    /// C_n(x;α).
    Charlier,
    /// E[(X-α)_{n,λ}] = Bel_{n,λ}(α,0), exact.
    CentralMoment,
    /// E[(X-α+β)_{n,λ}] by the Poisson partial sum.
    Moment,
    /// E[(X-α+β)_{n,λ}] by Monte Carlo.
    MomentMc,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Table {
            family,
            lambda,
            max_n,
            format,
        } => {
            let lambda = scalar::parse(&lambda)?;
            write_io(out, &table(family, &lambda, max_n, format))?;
            Ok(EXIT_OK)
        }
        Command::Eval {
            family,
            n,
            lambda,
            alpha,
            beta,
            x,
            all_paths,
            target,
            samples,
            seed,
        } => {
            let params = EvalParams {
                n,
                lambda: lambda.as_deref().map(scalar::parse).transpose()?,
                alpha: alpha.as_deref().map(scalar::parse).transpose()?,
                beta: beta.as_deref().map(scalar::parse).transpose()?,
                x: x.as_deref().map(scalar::parse).transpose()?,
                target,
                samples,
                seed,
            };
            let (text, agree) = eval(family, &params, all_paths)?;
            write_io(out, &text)?;
            if !agree {
                write_io(err, "error: computation paths disagree\n")?;
                return Ok(EXIT_FAILURE);
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            seed,
            max_n,
            samples,
            corrupt,
            timing,
        } => {
            let suite: Suite = suite.parse()?;
            let mut grid = Grid::default();
            if let Some(cap) = env_cap()? {
                grid = grid.capped(cap);
            }
            if let Some(cap) = max_n {
                grid = grid.capped(cap);
            }
            if let Some(samples) = samples {
                grid.monte_carlo_samples = samples;
            }
            let options = SuiteOptions {
                grid,
                seed,
                corruption: corrupt.as_deref().map(parse_corruption).transpose()?,
                timing,
            };
            let report = verify::run_suite(suite, &options)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            write_io(out, &format!("{json}\n"))?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
    }
}

fn write_io(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Parameter(format!("write failed: {e}")))
}

fn env_cap() -> Result<Option<usize>> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map(Some).map_err(|_| {
            Error::Parse(format!(
                "{MAX_N_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
        _ => Ok(None),
    }
}

fn parse_corruption(text: &str) -> Result<Corruption> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let index = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad index `{s}` in --corrupt")))
    };
    match parts.as_slice() {
        [n, k] => Ok(Corruption {
            n: index(n)?,
            k: index(k)?,
            delta: Scalar::one(),
        }),
        [n, k, d] => Ok(Corruption {
            n: index(n)?,
            k: index(k)?,
            delta: scalar::parse(d)?,
        }),
        _ => Err(Error::Parse(format!(
            "--corrupt expects N,K or N,K,DELTA, got `{text}`"
        ))),
    }
}

/// The triangle for `family`, rendered in `format`.
pub fn table(family: TableFamily, lambda: &Scalar, max_n: usize, format: Format) -> String {
    let triangle: Triangle = match family {
        TableFamily::S1 => stirling::stirling_table(StirlingKind::Classical1, lambda, max_n)
            .values()
            .clone(),
        TableFamily::S2 => stirling::stirling_table(StirlingKind::Classical2, lambda, max_n)
            .values()
            .clone(),
        TableFamily::S1deg => stirling::stirling_table(StirlingKind::Degenerate1, lambda, max_n)
            .values()
            .clone(),
        TableFamily::S2deg => stirling::stirling_table(StirlingKind::Degenerate2, lambda, max_n)
            .values()
            .clone(),
        TableFamily::StirlingType => bell::stirling_type_table(lambda, max_n).values().clone(),
    };
    render_triangle(&triangle, format)
}

fn render_triangle(triangle: &Triangle, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("n,k,value\n");
            for (n, row) in triangle.rows().iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    s.push_str(&format!("{n},{k},{}\n", scalar::render(v)));
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = triangle
                .rows()
                .iter()
                .map(|row| row.iter().map(scalar::render).collect())
                .collect();
            format!(
                "{}\n",
                serde_json::to_string(&rows).expect("strings serialize")
            )
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalParams {
    pub n: usize,
    pub lambda: Option<Scalar>,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub x: Option<Scalar>,
    pub target: f64,
    pub samples: u64,
    pub seed: u64,
}

fn required<'a>(value: &'a Option<Scalar>, flag: &str, family: EvalFamily) -> Result<&'a Scalar> {
    value
        .as_ref()
        .ok_or_else(|| Error::Parameter(format!("--{flag} is required for family {family:?}")))
}

/// Text to print and whether every printed path agreed.
pub fn eval(family: EvalFamily, p: &EvalParams, all_paths: bool) -> Result<(String, bool)> {
    let n = p.n;
    let single = |v: Scalar| Ok((format!("{}\n", scalar::render(&v)), true));
    match family {
        EvalFamily::Bell => {
            let x = required(&p.x, "x", family)?;
            if all_paths {
                let table = stirling::stirling_table(StirlingKind::Classical2, &Scalar::zero(), n);
                let via_series =
                    bell::two_variable_bell_series(&Scalar::zero(), x, x, n)[n].clone();
                return Ok(lines(&[
                    ("stirling", bell::bell_poly(n, x)),
                    ("genfunc", via_series),
                    ("degenerate-table", bell::degenerate_bell_from(&table, n, x)),
                ]));
            }
            single(bell::bell_poly(n, x))
        }
        EvalFamily::Degbell => {
            let lambda = required(&p.lambda, "lambda", family)?;
            let x = required(&p.x, "x", family)?;
            if all_paths {
                let via_series = bell::two_variable_bell_series(lambda, x, x, n)[n].clone();
                return Ok(lines(&[
                    ("stirling", bell::degenerate_bell_poly(n, lambda, x)),
                    ("genfunc", via_series),
                ]));
            }
            single(bell::degenerate_bell_poly(n, lambda, x))
        }
        EvalFamily::Bell2 => {
            let lambda = required(&p.lambda, "lambda", family)?;
            let alpha = required(&p.alpha, "alpha", family)?;
            let beta = required(&p.beta, "beta", family)?;
            if all_paths {
                let values: Vec<(&str, Scalar)> = BellPath::ALL
                    .iter()
                    .map(|&path| {
                        (
                            path.name(),
                            bell::two_variable_bell(n, lambda, alpha, beta, path),
                        )
                    })
                    .collect();
                return Ok(lines(&values));
            }
            single(bell::two_variable_bell(
                n,
                lambda,
                alpha,
                beta,
                BellPath::GeneratingFunction,
            ))
        }
        EvalFamily::Charlier => {
            let x = required(&p.x, "x", family)?;
            let alpha = required(&p.alpha, "alpha", family)?;
            if all_paths {
                let lambda = p.lambda.clone().unwrap_or_else(Scalar::zero);
                return Ok(lines(&[
                    (
                        "genfunc",
                        charlier::charlier(n, x, alpha, &CharlierPath::GeneratingFunction),
                    ),
                    (
                        "explicit",
                        charlier::charlier(n, x, alpha, &CharlierPath::Explicit),
                    ),
                    (
                        "degenerate",
                        charlier::charlier(n, x, alpha, &CharlierPath::Degenerate(lambda)),
                    ),
                ]));
            }
            single(charlier::charlier(
                n,
                x,
                alpha,
                &CharlierPath::GeneratingFunction,
            ))
        }
        EvalFamily::CentralMoment => {
            let lambda = required(&p.lambda, "lambda", family)?;
            let alpha = required(&p.alpha, "alpha", family)?;
            if all_paths {
                let est = poisson::poisson_degenerate_moment(
                    n,
                    lambda,
                    alpha,
                    &Scalar::zero(),
                    p.target,
                )?;
                let exact = bell::two_variable_bell(
                    n,
                    lambda,
                    alpha,
                    &Scalar::zero(),
                    BellPath::GeneratingFunction,
                );
                let mut text = lines(&[
                    ("genfunc", exact.clone()),
                    (
                        "central-moments",
                        bell::two_variable_bell(
                            n,
                            lambda,
                            alpha,
                            &Scalar::zero(),
                            BellPath::CentralMoments,
                        ),
                    ),
                ]);
                let report = MomentReport::new(&est);
                text.0.push_str(&format!(
                    "partial-sum: {} ± {}\n",
                    report.value, report.error_bound
                ));
                text.1 &= est.covers(&exact);
                return Ok(text);
            }
            single(bell::two_variable_bell(
                n,
                lambda,
                alpha,
                &Scalar::zero(),
                BellPath::GeneratingFunction,
            ))
        }
        EvalFamily::Moment | EvalFamily::MomentMc => {
            let lambda = required(&p.lambda, "lambda", family)?;
            let alpha = required(&p.alpha, "alpha", family)?;
            let beta = required(&p.beta, "beta", family)?;
            let est = if family == EvalFamily::Moment {
                poisson::poisson_degenerate_moment(n, lambda, alpha, beta, p.target)?
            } else {
                poisson::poisson_sample_moment(n, lambda, alpha, beta, p.samples, p.seed)?
            };
            let report = MomentReport::new(&est);
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            let agree = if all_paths {
                let exact =
                    bell::two_variable_bell(n, lambda, alpha, beta, BellPath::GeneratingFunction);
                json.push_str(&format!("genfunc: {}\n", scalar::render(&exact)));
                est.covers(&exact)
            } else {
                true
            };
            Ok((json, agree))
        }
    }
}

fn lines(values: &[(&str, Scalar)]) -> (String, bool) {
    let text = values
        .iter()
        .map(|(name, v)| format!("{name}: {}\n", scalar::render(v)))
        .collect();
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    (text, agree)
}

/// A moment estimate as printed by `eval`: decimal strings, never floats.
#[derive(Debug, Serialize)]
pub struct MomentReport {
    pub method: MomentMethod,
    pub value: String,
    /// Covers the decimal rounding of `value` as printed.
    pub error_bound: String,
    pub count: u64,
}

impl MomentReport {
    pub fn new(est: &MomentEstimate) -> Self {
        let places = match est.method {
            MomentMethod::PartialSum => {
                let bound = scalar::to_f64(&est.error_bound);
                let wanted = if bound > 0.0 {
                    (-bound.log10()).ceil() as i64 + 4
                } else {
                    30
                };
                wanted.clamp(6, poisson::MIN_DIGITS as i64) as u32
            }
            MomentMethod::MonteCarlo => 12,
        };
        let half_unit = scalar::decimal_unit(places) / scalar::int(2);
        let bound = if est.error_bound.is_zero()
            && scalar::round_to_digits(&est.value, places) == est.value
        {
            Scalar::zero()
        } else {
            scalar::ceil_to_digits(&(&est.error_bound + half_unit), places)
        };
        MomentReport {
            method: est.method,
            value: scalar::to_decimal_string(&est.value, places),
            error_bound: scalar::to_decimal_string(&bound, places),
            count: est.count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("degen-bell").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn s2_table_contains_seven() {
        let (code, out, _) =
            run_str(&["table", "--family", "s2", "--max-n", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,k,value\n"));
        assert!(out.lines().any(|l| l == "4,2,7"));
    }

    #[test]
    fn degenerate_s2_at_one_is_identity() {
        let (code, out, _) = run_str(&[
            "table", "--family", "s2deg", "--lambda", "1", "--max-n", "3",
        ]);
        assert_eq!(code, 0);
        for line in out.lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            let expected = if f[0] == f[1] { "1" } else { "0" };
            assert_eq!(f[2], expected, "{line}");
        }
    }

    #[test]
    fn degenerate_tables_at_zero_are_byte_identical() {
        for (deg, classical) in [("s2deg", "s2"), ("s1deg", "s1")] {
            for format in ["csv", "json"] {
                let a = run_str(&[
                    "table", "--family", deg, "--lambda", "0", "--max-n", "6", "--format", format,
                ]);
                let b = run_str(&[
                    "table", "--family", classical, "--max-n", "6", "--format", format,
                ]);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn json_table_is_nested_strings() {
        let (_, out, _) = run_str(&[
            "table", "--family", "s1", "--max-n", "2", "--format", "json",
        ]);
        assert_eq!(out, "[[\"1\"],[\"0\",\"1\"],[\"0\",\"-1\",\"1\"]]\n");
    }

    #[test]
    fn eval_examples() {
        let cases: [(&[&str], &str); 3] = [
            (
                &[
                    "eval", "--family", "bell2", "--n", "0", "--lambda", "1/2", "--alpha", "3",
                    "--beta", "1",
                ],
                "1\n",
            ),
            (
                &[
                    "eval", "--family", "charlier", "--n", "1", "--x", "3", "--alpha", "1",
                ],
                "2\n",
            ),
            (
                &[
                    "eval", "--family", "bell2", "--n", "2", "--lambda", "0", "--alpha", "1",
                    "--beta", "1",
                ],
                "2\n",
            ),
        ];
        for (args, expected) in cases {
            let (code, out, err) = run_str(args);
            assert_eq!((code, out.as_str()), (0, expected), "{args:?}: {err}");
        }
    }

    #[test]
    fn all_paths_agree() {
        let (code, out, _) = run_str(&[
            "eval",
            "--family",
            "bell2",
            "--n",
            "5",
            "--lambda",
            "-1/3",
            "--alpha",
            "1/2",
            "--beta",
            "-2",
            "--all-paths",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        let (code, out, _) = run_str(&[
            "eval",
            "--family",
            "charlier",
            "--n",
            "4",
            "--x",
            "1/2",
            "--alpha",
            "3",
            "--lambda",
            "2",
            "--all-paths",
        ]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn moment_prints_decimal_strings() {
        let (code, out, _) = run_str(&[
            "eval",
            "--family",
            "moment",
            "--n",
            "2",
            "--lambda",
            "0",
            "--alpha",
            "2",
            "--beta",
            "2",
            "--all-paths",
        ]);
        assert_eq!(code, 0, "{out}");
        let json: serde_json::Value =
            serde_json::from_str(out.split("genfunc").next().unwrap()).unwrap();
        let value: f64 = json["value"].as_str().unwrap().parse().unwrap();
        let bound: f64 = json["error_bound"].as_str().unwrap().parse().unwrap();
        assert!(bound > 0.0 && bound <= 1e-20, "{out}");
        assert!((value - 6.0).abs() <= 1e-20, "{out}");
        assert!(out.ends_with("genfunc: 6\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &[
                "eval", "--family", "bell2", "--n", "2", "--lambda", "0", "--alpha", "1",
            ][..],
            &["table", "--family", "s2", "--lambda", "1.5"][..],
            &["table", "--family", "s9"][..],
            &["verify", "--suite", "t6"][..],
            &["verify", "--suite", "t1", "--corrupt", "4"][..],
            &[
                "eval", "--family", "moment", "--n", "1", "--lambda", "0", "--alpha", "-1",
                "--beta", "0",
            ][..],
        ] {
            let (code, _, err) = run_str(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn verify_reports_failure_with_exit_one() {
        let (code, out, _) = run_str(&[
            "verify",
            "--suite",
            "inversion",
            "--max-n",
            "5",
            "--corrupt",
            "4,2",
        ]);
        assert_eq!(code, EXIT_FAILURE);
        let report: verify::RunReport = serde_json::from_str(&out).unwrap();
        assert_eq!(report.cases_failed as usize, report.failures.len());
        assert!(report.cases_failed > 0);
    }
}
