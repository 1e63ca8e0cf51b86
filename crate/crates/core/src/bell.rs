//! Bell polynomial families and the Stirling-type numbers.
//!
//! * `Belₙ(x) = ∑ S₂(n,l) x^l`, EGF `e^{x(e^t - 1)}`
//! * `Bel_{n,λ}(x) = ∑ S₂,λ(n,l) x^l`, EGF `e^{x(e_λ(t) - 1)}`
//! * `Bel_{n,λ}(α,β)`, EGF `e^{α(e_λ(t) - 1)} e_λ^{β-α}(t)`
//! * `S_λ(n,k)`, the coefficient of `α^k` in `Bel_{n,λ}(α,0)`
//!
//! The two-variable polynomials can be evaluated along several independent
//! routes (see [`BellPath`]); every route must agree exactly.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::check::{first_failure, Check};
use crate::poly::Poly;
use crate::scalar::{self, binomial, falling_factorial_lambda, pow, Scalar};
use crate::series::{self, Series};
use crate::stirling::{stirling_table, StirlingKind, StirlingTable, Triangle};
use crate::tables::Tables;

/// Evaluation route for `Bel_{n,λ}(α,β)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellPath {
    /// EGF coefficient of `e^{α(e_λ(t)-1)} e_λ^{β-α}(t)`.
    GeneratingFunction,
    /// `∑_l C(n,l) Bel_{l,λ}(α) (β-α)_{n-l,λ}`.
    BellConvolution,
    /// `∑_i α^i ∑_{k≥i} C(n,k) (β-α)_{n-k,λ} S₂,λ(k,i)`.
    StirlingDoubleSum,
    /// `∑_l α^l ∑_{k≥l} C(n,k) (β)_{n-k,λ} S_λ(k,l)`, through the
    /// Stirling-type numbers.
    CentralMoments,
}

impl BellPath {
    pub const ALL: [BellPath; 4] = [
        BellPath::GeneratingFunction,
        BellPath::BellConvolution,
        BellPath::StirlingDoubleSum,
        BellPath::CentralMoments,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellPath::GeneratingFunction => "genfunc",
            BellPath::BellConvolution => "convolution",
            BellPath::StirlingDoubleSum => "double-sum",
            BellPath::CentralMoments => "central-moments",
        }
    }
}

/// `S_λ(n,k)` for `0 ≤ k ≤ n ≤ max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTypeTable {
    lambda: Scalar,
    values: Triangle,
}

impl StirlingTypeTable {
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn max_n(&self) -> usize {
        self.values.max_n()
    }

    pub fn get(&self, n: usize, k: usize) -> Scalar {
        self.values.get(n, k)
    }

    pub fn values(&self) -> &Triangle {
        &self.values
    }

    /// `Bel_{n,λ}(α,0)` as a polynomial in `α`.
    pub fn row_poly(&self, n: usize) -> Poly {
        self.values.row_poly(n)
    }
}

/// Classical Bell polynomial `Belₙ(x)`.
pub fn bell_poly(n: usize, x: &Scalar) -> Scalar {
    stirling_table(StirlingKind::Classical2, &Scalar::zero(), n)
        .values()
        .row_poly(n)
        .eval(x)
}

/// Degenerate Bell polynomial `Bel_{n,λ}(x)`.
pub fn degenerate_bell_poly(n: usize, lambda: &Scalar, x: &Scalar) -> Scalar {
    degenerate_bell_from(&stirling_table(StirlingKind::Degenerate2, lambda, n), n, x)
}

/// `∑_l S₂,λ(n,l) x^l` from a precomputed second-kind table.
pub fn degenerate_bell_from(s2deg: &StirlingTable, n: usize, x: &Scalar) -> Scalar {
    s2deg.values().row_poly(n).eval(x)
}

/// `Bel_{n,λ}(α,β)` for `n = 0..=max_n`, straight from the generating
/// function. Touches no Stirling table.
pub fn two_variable_bell_series(
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    max_n: usize,
) -> Vec<Scalar> {
    let order = series::default_order(max_n);
    let outer = series::degenerate_exp_minus_one(lambda, order)
        .scale(alpha)
        .exp()
        .expect("zero constant term");
    let shift = series::degenerate_exp(&(beta - alpha), lambda, order);
    outer
        .mul(&shift)
        .expect("same order")
        .egf_coefficients(max_n)
}

/// `Bel_{n,λ}(α,β)` along one route.
pub fn two_variable_bell(
    n: usize,
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    path: BellPath,
) -> Scalar {
    match path {
        BellPath::GeneratingFunction => {
            two_variable_bell_series(lambda, alpha, beta, n).swap_remove(n)
        }
        _ => two_variable_bell_with(&Tables::build(lambda, n), n, alpha, beta, path),
    }
}

/// Table-backed evaluation; the generating-function route ignores `tables`
/// except for its λ.
pub fn two_variable_bell_with(
    tables: &Tables,
    n: usize,
    alpha: &Scalar,
    beta: &Scalar,
    path: BellPath,
) -> Scalar {
    let lambda = tables.lambda();
    let shift = beta - alpha;
    match path {
        BellPath::GeneratingFunction => {
            two_variable_bell_series(lambda, alpha, beta, n).swap_remove(n)
        }
        BellPath::BellConvolution => (0..=n)
            .map(|l| {
                binomial(n, l)
                    * degenerate_bell_from(&tables.s2deg, l, alpha)
                    * falling_factorial_lambda(&shift, n - l, lambda)
            })
            .sum(),
        BellPath::StirlingDoubleSum => (0..=n)
            .map(|i| {
                let inner: Scalar = (i..=n)
                    .map(|k| {
                        binomial(n, k)
                            * falling_factorial_lambda(&shift, n - k, lambda)
                            * tables.s2deg.get(k, i)
                    })
                    .sum();
                pow(alpha, i) * inner
            })
            .sum(),
        BellPath::CentralMoments => (0..=n)
            .map(|l| {
                let inner: Scalar = (l..=n)
                    .map(|k| {
                        binomial(n, k)
                            * falling_factorial_lambda(beta, n - k, lambda)
                            * tables.stirling_type.get(k, l)
                    })
                    .sum();
                pow(alpha, l) * inner
            })
            .sum(),
    }
}

/// Expands `Bel_{n,λ}(α,0) = ∑_l C(n,l) Bel_{l,λ}(α) (-α)_{n-l,λ}` as a
/// polynomial in `α` and reads off the coefficients.
pub fn stirling_type_from(s2deg: &StirlingTable) -> StirlingTypeTable {
    let lambda = s2deg.lambda();
    let max_n = s2deg.max_n();
    let bell_polys: Vec<Poly> = (0..=max_n).map(|l| s2deg.values().row_poly(l)).collect();
    let minus_alpha: Vec<Poly> = (0..=max_n)
        .map(|m| Poly::shifted_falling_factorial(m, &-Scalar::one(), &Scalar::zero(), lambda))
        .collect();
    let rows = (0..=max_n)
        .map(|n| {
            let p = (0..=n).fold(Poly::zero(), |acc, l| {
                &acc + &(&bell_polys[l] * &minus_alpha[n - l]).scale(&binomial(n, l))
            });
            let mut row = p.into_coeffs();
            debug_assert!(row.len() <= n + 1);
            row.resize(n + 1, Scalar::zero());
            row
        })
        .collect();
    StirlingTypeTable {
        lambda: lambda.clone(),
        values: Triangle::from_rows(rows),
    }
}

pub fn stirling_type_table(lambda: &Scalar, max_n: usize) -> StirlingTypeTable {
    stirling_type_from(&stirling_table(StirlingKind::Degenerate2, lambda, max_n))
}

/// `∑_{b=0}^{i} C(n,b) (-1)^b ⟨1⟩_{b,λ/α} S₂,λ(n-b,i-b)`.
///
/// This depends on `α` through `⟨1⟩_{b,λ/α}`, so it is *not* `S_λ(n,i)`
/// in general; only `∑_i α^i ·` (this) equals `Bel_{n,λ}(α,0)`.
pub fn rising_expansion_coefficient(tables: &Tables, n: usize, i: usize, alpha: &Scalar) -> Scalar {
    let step = tables.lambda() / alpha;
    (0..=i.min(n))
        .map(|b| {
            binomial(n, b)
                * scalar::sign_power(b)
                * scalar::rising_factorial_lambda(&Scalar::one(), b, &step)
                * tables.s2deg.get(n - b, i - b)
        })
        .sum()
}

/// `∑_{l=0}^{k} C(n,l) (1)_{l,λ/α} S_λ(n-l,k-l)`; as with
/// [`rising_expansion_coefficient`], only the `α`-weighted sum over `k` is
/// an identity (it gives `Bel_{n,λ}(α)`).
pub fn inverse_expansion_coefficient(
    tables: &Tables,
    n: usize,
    k: usize,
    alpha: &Scalar,
) -> Scalar {
    let step = tables.lambda() / alpha;
    (0..=k.min(n))
        .map(|l| {
            binomial(n, l)
                * falling_factorial_lambda(&Scalar::one(), l, &step)
                * tables.stirling_type.get(n - l, k - l)
        })
        .sum()
}

fn require_nonzero_alpha(alpha: &Scalar) {
    assert!(
        !alpha.is_zero(),
        "α must be nonzero: the expansion involves λ/α"
    );
}

/// `∑_i α^i · rising_expansion_coefficient(n,i) = Bel_{n,λ}(α,0)` for each
/// `n ≤ tables.max_n()`. Panics if `α = 0`.
pub fn rising_expansion_checks(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    require_nonzero_alpha(alpha);
    let central = two_variable_bell_series(tables.lambda(), alpha, &Scalar::zero(), tables.max_n());
    (0..=tables.max_n())
        .map(|n| {
            let lhs: Scalar = (0..=n)
                .map(|i| pow(alpha, i) * rising_expansion_coefficient(tables, n, i, alpha))
                .sum();
            Check::new("stirling-type.rising-expansion", n, lhs, central[n].clone())
        })
        .collect()
}

/// `Bel_{n,λ}(α) = ∑_k α^k · inverse_expansion_coefficient(n,k)` for each
/// `n`. Panics if `α = 0`.
pub fn inverse_expansion_checks(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    require_nonzero_alpha(alpha);
    (0..=tables.max_n())
        .map(|n| {
            let rhs: Scalar = (0..=n)
                .map(|k| pow(alpha, k) * inverse_expansion_coefficient(tables, n, k, alpha))
                .sum();
            Check::new(
                "stirling-type.inverse-expansion",
                n,
                degenerate_bell_from(&tables.s2deg, n, alpha),
                rhs,
            )
        })
        .collect()
}

/// Entry-by-entry reading `S₂,λ(n,k) = inverse_expansion_coefficient(n,k)`.
/// Holds at `λ = 0`; for `λ ≠ 0` the α-dependence makes it fail.
pub fn inverse_expansion_coefficientwise(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    require_nonzero_alpha(alpha);
    let mut out = Vec::new();
    for n in 0..=tables.max_n() {
        for k in 0..=n {
            out.push(Check::at(
                "stirling-type.inverse-coefficientwise",
                n,
                k,
                tables.s2deg.get(n, k),
                inverse_expansion_coefficient(tables, n, k, alpha),
            ));
        }
    }
    out
}

pub fn verify_rising_expansion(lambda: &Scalar, alpha: &Scalar, max_n: usize) -> Result<(), Check> {
    first_failure(rising_expansion_checks(
        &Tables::build(lambda, max_n),
        alpha,
    ))
}

pub fn verify_inverse_expansion(
    lambda: &Scalar,
    alpha: &Scalar,
    max_n: usize,
) -> Result<(), Check> {
    first_failure(inverse_expansion_checks(
        &Tables::build(lambda, max_n),
        alpha,
    ))
}

/// The given table-backed routes against the generating function,
/// `n ≤ tables.max_n()`.
pub fn path_checks(
    tables: &Tables,
    alpha: &Scalar,
    beta: &Scalar,
    paths: &[BellPath],
) -> Vec<Check> {
    let reference = two_variable_bell_series(tables.lambda(), alpha, beta, tables.max_n());
    let mut out = Vec::new();
    for (n, expected) in reference.iter().enumerate() {
        for &path in paths {
            let identity = match path {
                BellPath::GeneratingFunction => continue,
                BellPath::BellConvolution => "bell2.convolution",
                BellPath::StirlingDoubleSum => "bell2.double-sum",
                BellPath::CentralMoments => "bell2.central-moments",
            };
            out.push(Check::new(
                identity,
                n,
                expected.clone(),
                two_variable_bell_with(tables, n, alpha, beta, path),
            ));
        }
    }
    out
}

/// Every table-backed route against the generating function.
pub fn path_agreement_checks(tables: &Tables, alpha: &Scalar, beta: &Scalar) -> Vec<Check> {
    path_checks(tables, alpha, beta, &BellPath::ALL)
}

/// `Bel_{n,λ}(α,α) = Bel_{n,λ}(α)`, both sides independent of each other.
pub fn diagonal_checks(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    let diagonal = two_variable_bell_series(tables.lambda(), alpha, alpha, tables.max_n());
    diagonal
        .into_iter()
        .enumerate()
        .map(|(n, lhs)| {
            Check::new(
                "bell2.diagonal",
                n,
                lhs,
                degenerate_bell_from(&tables.s2deg, n, alpha),
            )
        })
        .collect()
}

/// `∑_k S_λ(n,k) α^k = Bel_{n,λ}(α,0)` with the right side from the
/// generating function.
pub fn stirling_type_reconstruction_checks(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    two_variable_bell_series(tables.lambda(), alpha, &Scalar::zero(), tables.max_n())
        .into_iter()
        .enumerate()
        .map(|(n, rhs)| {
            Check::new(
                "stirling-type.reconstruction",
                n,
                tables.stirling_type.row_poly(n).eval(alpha),
                rhs,
            )
        })
        .collect()
}

/// At `λ = 0`: `E[(X-α+β)^n] = ∑_l C(n,l) Bel_l(α) (β-α)^{n-l}`, with the
/// left side from the classical generating function `e^{α(e^t-1)} e^{(β-α)t}`.
pub fn classical_shift_checks(alpha: &Scalar, beta: &Scalar, max_n: usize) -> Vec<Check> {
    let order = series::default_order(max_n);
    let e_t_minus_one = Series::t(order)
        .exp()
        .and_then(|e| e.sub(&Series::one(order)))
        .expect("exp of t");
    let lhs = e_t_minus_one
        .scale(alpha)
        .exp()
        .and_then(|a| a.mul(&Series::t(order).scale(&(beta - alpha)).exp()?))
        .expect("zero constant terms")
        .egf_coefficients(max_n);
    let s2 = stirling_table(StirlingKind::Classical2, &Scalar::zero(), max_n);
    let shift = beta - alpha;
    lhs.into_iter()
        .enumerate()
        .map(|(n, lhs)| {
            let rhs: Scalar = (0..=n)
                .map(|l| binomial(n, l) * s2.values().row_poly(l).eval(alpha) * pow(&shift, n - l))
                .sum();
            Check::new("bell2.classical-shift", n, lhs, rhs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::testing::small_rational;
    use proptest::prelude::*;

    fn all_pass(checks: Vec<Check>) {
        if let Err(c) = first_failure(checks) {
            panic!("failed: {c}");
        }
    }

    #[test]
    fn bell_examples() {
        for x in [int(0), ratio(3, 4), int(-5)] {
            assert_eq!(bell_poly(0, &x), int(1));
        }
        let bell_numbers: Vec<Scalar> = (0..=5).map(|n| bell_poly(n, &int(1))).collect();
        assert_eq!(bell_numbers, [1, 1, 2, 5, 15, 52].map(int));
        assert_eq!(bell_poly(3, &int(2)), int(22));
    }

    #[test]
    fn bell_numbers_from_series() {
        let order = 12;
        let e = Series::t(order)
            .exp()
            .unwrap()
            .sub(&Series::one(order))
            .unwrap();
        let bell = e.exp().unwrap().egf_coefficients(order);
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(&bell_poly(n, &int(1)), b);
        }
    }

    #[test]
    fn degenerate_bell_examples() {
        let lambda = ratio(2, 7);
        let x = ratio(-3, 2);
        assert_eq!(degenerate_bell_poly(1, &lambda, &x), x);
        assert_eq!(
            degenerate_bell_poly(2, &lambda, &x),
            (int(1) - &lambda) * &x + &x * &x
        );
        assert_eq!(degenerate_bell_poly(4, &int(0), &int(1)), int(15));
    }

    #[test]
    fn two_variable_examples() {
        let lambda = ratio(1, 2);
        for path in BellPath::ALL {
            assert_eq!(
                two_variable_bell(0, &lambda, &int(3), &int(1), path),
                int(1)
            );
            assert_eq!(
                two_variable_bell(5, &lambda, &int(3), &int(3), path),
                degenerate_bell_poly(5, &lambda, &int(3))
            );
        }
        // Frozen from an independent symbolic expansion of
        // exp(2((1 + t/2)^2 - 1)) (1 + t/2)^{-2}.
        for path in BellPath::ALL {
            assert_eq!(
                two_variable_bell(3, &lambda, &int(2), &int(1), path),
                int(5),
                "{path:?}"
            );
        }
    }

    #[test]
    fn stirling_type_examples() {
        let t = stirling_type_table(&int(0), 2);
        assert_eq!(t.get(0, 0), int(1));
        assert_eq!(t.values().row(1), &[int(0), int(0)]);
        assert_eq!(t.values().row(2), &[int(0), int(1), int(0)]);
    }

    #[test]
    fn stirling_type_small_rows_for_general_lambda() {
        // E[(X-α)(X-α-λ)] = Var X = α, independent of λ.
        let t = stirling_type_table(&ratio(5, 3), 3);
        assert_eq!(t.values().row(2), &[int(0), int(1), int(0)]);
        // E[(X-α)(X-α-λ)(X-α-2λ)] = α - 3λα.
        assert_eq!(
            t.values().row(3),
            &[int(0), int(1) - int(5), int(0), int(0)]
        );
    }

    #[test]
    fn grid_path_agreement() {
        let lambdas = [int(0), ratio(1, 2), ratio(-1, 3), int(2)];
        let points = [int(-2), int(0), ratio(1, 2), int(1), int(3)];
        for lambda in &lambdas {
            let tables = Tables::build(lambda, 12);
            for alpha in &points {
                all_pass(diagonal_checks(&tables, alpha));
                all_pass(stirling_type_reconstruction_checks(&tables, alpha));
                for beta in &points {
                    all_pass(path_agreement_checks(&tables, alpha, beta));
                }
            }
        }
    }

    #[test]
    fn lambda_zero_diagonal_is_classical() {
        for alpha in [int(-2), ratio(1, 2), int(3)] {
            let diag = two_variable_bell_series(&int(0), &alpha, &alpha, 10);
            for (n, v) in diag.iter().enumerate() {
                assert_eq!(v, &bell_poly(n, &alpha));
            }
        }
    }

    #[test]
    fn classical_shift_corollary() {
        for (alpha, beta) in [
            (int(1), int(0)),
            (ratio(1, 2), int(3)),
            (int(-2), ratio(1, 2)),
        ] {
            all_pass(classical_shift_checks(&alpha, &beta, 12));
            let tables = Tables::build(&int(0), 12);
            let conv: Vec<Scalar> = (0..=12)
                .map(|n| {
                    two_variable_bell_with(&tables, n, &alpha, &beta, BellPath::BellConvolution)
                })
                .collect();
            let rhs: Vec<Scalar> = classical_shift_checks(&alpha, &beta, 12)
                .into_iter()
                .map(|c| c.rhs)
                .collect();
            assert_eq!(conv, rhs);
        }
    }

    #[test]
    fn rising_and_inverse_expansions() {
        assert_eq!(verify_rising_expansion(&int(0), &int(3), 10), Ok(()));
        assert_eq!(verify_rising_expansion(&ratio(1, 2), &int(1), 10), Ok(()));
        assert_eq!(
            verify_rising_expansion(&ratio(-1, 3), &ratio(1, 2), 0),
            Ok(())
        );
        for alpha in [ratio(1, 2), int(1), int(3), int(-2)] {
            assert_eq!(verify_inverse_expansion(&int(0), &alpha, 10), Ok(()));
            assert_eq!(verify_inverse_expansion(&ratio(1, 2), &alpha, 10), Ok(()));
        }
    }

    #[test]
    fn inverse_expansion_holds_coefficientwise_only_at_lambda_zero() {
        let classical = Tables::build(&int(0), 10);
        all_pass(inverse_expansion_coefficientwise(&classical, &int(3)));

        let degenerate = Tables::build(&ratio(1, 2), 4);
        let failures: Vec<Check> = inverse_expansion_coefficientwise(&degenerate, &int(2))
            .into_iter()
            .filter(|c| !c.passed())
            .collect();
        assert!(failures.iter().any(|c| c.n == 2 && c.k == Some(1)));
    }

    #[test]
    fn rising_expansion_coefficients_depend_on_alpha() {
        let tables = Tables::build(&ratio(1, 2), 4);
        let a = rising_expansion_coefficient(&tables, 3, 3, &int(1));
        let b = rising_expansion_coefficient(&tables, 3, 3, &int(2));
        assert_ne!(a, b);
    }

    #[test]
    #[should_panic]
    fn zero_alpha_is_rejected() {
        let _ = verify_rising_expansion(&int(1), &int(0), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn stirling_type_rows_evaluate_to_central_moments(alpha in small_rational(), lambda in small_rational()) {
            let tables = Tables::build(&lambda, 8);
            for check in stirling_type_reconstruction_checks(&tables, &alpha) {
                prop_assert!(check.passed(), "{}", check);
            }
        }
    }
}
