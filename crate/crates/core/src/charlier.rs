//! Charlier polynomials `C_n(x;α)`, EGF `e^{-αt}(1+t)^x`, and their
//! connection formulas with the degenerate Bell families.

use num_traits::{One, Zero};

use crate::bell::{self, two_variable_bell_series};
use crate::check::{first_failure, Check};
use crate::poly::Poly;
use crate::scalar::{binomial, falling_factorial_lambda, pow, sign_power, Scalar};
use crate::series::{self, Series};
use crate::tables::Tables;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharlierPath {
    /// EGF coefficient of `e^{-αt}(1+t)^x`.
    GeneratingFunction,
    /// `∑_k C(n,k) (-α)^{n-k} ∑_l x^l S₁(k,l)`.
    Explicit,
    /// `∑_l (x)_{l,λ} ∑_{k≥l} C(n,k) (-α)^{n-k} S₁,λ(k,l)` for the given λ.
    /// The value does not depend on λ.
    Degenerate(Scalar),
}

/// `C_n(x;α)` for `n = 0..=max_n` from the generating function.
pub fn charlier_series(x: &Scalar, alpha: &Scalar, max_n: usize) -> Vec<Scalar> {
    let order = series::default_order(max_n);
    let damping = Series::t(order)
        .scale(&-alpha)
        .exp()
        .expect("zero constant term");
    let power = Series::from_coeffs(vec![Scalar::one(), Scalar::one()], order)
        .rational_power(x)
        .expect("constant term is one");
    damping
        .mul(&power)
        .expect("same order")
        .egf_coefficients(max_n)
}

pub fn charlier(n: usize, x: &Scalar, alpha: &Scalar, path: &CharlierPath) -> Scalar {
    match path {
        CharlierPath::GeneratingFunction => charlier_series(x, alpha, n).swap_remove(n),
        CharlierPath::Explicit => {
            charlier_with(&Tables::build(&Scalar::zero(), n), n, x, alpha, path)
        }
        CharlierPath::Degenerate(lambda) => {
            charlier_with(&Tables::build(lambda, n), n, x, alpha, path)
        }
    }
}

/// Table-backed evaluation. For [`CharlierPath::Degenerate`] the λ of
/// `tables` is used, not the one carried by the path.
pub fn charlier_with(
    tables: &Tables,
    n: usize,
    x: &Scalar,
    alpha: &Scalar,
    path: &CharlierPath,
) -> Scalar {
    let minus_alpha = -alpha;
    match path {
        CharlierPath::GeneratingFunction => charlier_series(x, alpha, n).swap_remove(n),
        CharlierPath::Explicit => (0..=n)
            .map(|k| {
                let inner: Scalar = (0..=k).map(|l| pow(x, l) * tables.s1.get(k, l)).sum();
                binomial(n, k) * pow(&minus_alpha, n - k) * inner
            })
            .sum(),
        CharlierPath::Degenerate(_) => {
            let lambda = tables.lambda();
            (0..=n)
                .map(|l| {
                    let inner: Scalar = (l..=n)
                        .map(|k| binomial(n, k) * pow(&minus_alpha, n - k) * tables.s1deg.get(k, l))
                        .sum();
                    falling_factorial_lambda(x, l, lambda) * inner
                })
                .sum()
        }
    }
}

/// `C_n(x;α)` as a polynomial in `x`:
/// coefficient of `x^l` is `∑_{k=l}^{n} C(n,k) (-1)^{n-k} α^{n-k} S₁(k,l)`.
pub fn charlier_poly(tables: &Tables, n: usize, alpha: &Scalar) -> Poly {
    Poly::from_coeffs(
        (0..=n)
            .map(|l| {
                (l..=n)
                    .map(|k| {
                        binomial(n, k) * sign_power(n - k) * pow(alpha, n - k) * tables.s1.get(k, l)
                    })
                    .sum()
            })
            .collect(),
    )
}

/// The same layout with the inner factor written `S₁(n,k)` instead of
/// `S₁(k,l)`. Kept
/// only so the regression suite can show that it is wrong.
pub fn charlier_poly_transposed(tables: &Tables, n: usize, alpha: &Scalar) -> Poly {
    Poly::from_coeffs(
        (0..=n)
            .map(|l| {
                (l..=n)
                    .map(|k| {
                        binomial(n, k) * sign_power(n - k) * pow(alpha, n - k) * tables.s1.get(n, k)
                    })
                    .sum()
            })
            .collect(),
    )
}

/// `charlier_poly(n)` evaluated at `x` against the generating function.
pub fn coefficient_form_checks(tables: &Tables, x: &Scalar, alpha: &Scalar) -> Vec<Check> {
    charlier_series(x, alpha, tables.max_n())
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            Check::new(
                "charlier.coefficient-form",
                n,
                c,
                charlier_poly(tables, n, alpha).eval(x),
            )
        })
        .collect()
}

pub fn transposed_form_checks(tables: &Tables, x: &Scalar, alpha: &Scalar) -> Vec<Check> {
    charlier_series(x, alpha, tables.max_n())
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            Check::new(
                "charlier.transposed-form",
                n,
                c,
                charlier_poly_transposed(tables, n, alpha).eval(x),
            )
        })
        .collect()
}

/// Explicit and degenerate routes against the generating function.
pub fn path_agreement_checks(tables: &Tables, x: &Scalar, alpha: &Scalar) -> Vec<Check> {
    let reference = charlier_series(x, alpha, tables.max_n());
    let degenerate = CharlierPath::Degenerate(tables.lambda().clone());
    let mut out = Vec::new();
    for (n, expected) in reference.iter().enumerate() {
        out.push(Check::new(
            "charlier.explicit",
            n,
            expected.clone(),
            charlier_with(tables, n, x, alpha, &CharlierPath::Explicit),
        ));
        out.push(Check::new(
            "charlier.degenerate-expansion",
            n,
            expected.clone(),
            charlier_with(tables, n, x, alpha, &degenerate),
        ));
    }
    out
}

/// The degenerate-route value at `lambda[0]` against every other λ.
pub fn lambda_independence_checks(tables: &[Tables], x: &Scalar, alpha: &Scalar) -> Vec<Check> {
    let Some((base, rest)) = tables.split_first() else {
        return Vec::new();
    };
    let max_n = tables.iter().map(Tables::max_n).min().unwrap_or(0);
    let value = |t: &Tables, n| {
        charlier_with(
            t,
            n,
            x,
            alpha,
            &CharlierPath::Degenerate(t.lambda().clone()),
        )
    };
    let mut out = Vec::new();
    for n in 0..=max_n {
        let reference = value(base, n);
        for other in rest {
            out.push(Check::new(
                "charlier.lambda-independence",
                n,
                reference.clone(),
                value(other, n),
            ));
        }
    }
    out
}

/// `Bel_{n,λ}(α,0) = ∑_k C_k(-α;-α) S₂,λ(n,k)` and
/// `Bel_{n,λ}(α) = ∑_k (-1)^k C_k(0;α) S₂,λ(n,k)`.
pub fn central_bell_checks(tables: &Tables, alpha: &Scalar) -> Vec<Check> {
    let max_n = tables.max_n();
    let central = two_variable_bell_series(tables.lambda(), alpha, &Scalar::zero(), max_n);
    let c_central = charlier_series(&-alpha, &-alpha, max_n);
    let c_zero = charlier_series(&Scalar::zero(), alpha, max_n);
    let mut out = Vec::new();
    for n in 0..=max_n {
        let rhs: Scalar = (0..=n)
            .map(|k| &c_central[k] * tables.s2deg.get(n, k))
            .sum();
        out.push(Check::new(
            "charlier.central-bell",
            n,
            central[n].clone(),
            rhs,
        ));
        let rhs: Scalar = (0..=n)
            .map(|k| sign_power(k) * &c_zero[k] * tables.s2deg.get(n, k))
            .sum();
        out.push(Check::new(
            "charlier.degenerate-bell",
            n,
            bell::degenerate_bell_from(&tables.s2deg, n, alpha),
            rhs,
        ));
    }
    out
}

/// `Bel_{n,λ}(α,β) = ∑_k C_k(β-α;-α) S₂,λ(n,k)`.
pub fn bell_from_charlier_checks(tables: &Tables, alpha: &Scalar, beta: &Scalar) -> Vec<Check> {
    let max_n = tables.max_n();
    let bell2 = two_variable_bell_series(tables.lambda(), alpha, beta, max_n);
    let c = charlier_series(&(beta - alpha), &-alpha, max_n);
    (0..=max_n)
        .map(|n| {
            let rhs: Scalar = (0..=n).map(|k| &c[k] * tables.s2deg.get(n, k)).sum();
            Check::new("charlier.bell2-from-charlier", n, bell2[n].clone(), rhs)
        })
        .collect()
}

/// `C_n(β-α;-α) = ∑_k Bel_{k,λ}(α,β) S₁,λ(n,k)`.
pub fn charlier_from_bell_checks(tables: &Tables, alpha: &Scalar, beta: &Scalar) -> Vec<Check> {
    let max_n = tables.max_n();
    let bell2 = two_variable_bell_series(tables.lambda(), alpha, beta, max_n);
    let c = charlier_series(&(beta - alpha), &-alpha, max_n);
    (0..=max_n)
        .map(|n| {
            let rhs: Scalar = (0..=n).map(|k| &bell2[k] * tables.s1deg.get(n, k)).sum();
            Check::new("charlier.charlier-from-bell2", n, c[n].clone(), rhs)
        })
        .collect()
}

/// Pushing `C_k(β-α;-α)` through `S₂,λ` and then `S₁,λ` returns it unchanged:
/// the two connection formulas are inverse to each other.
pub fn mutual_inversion_checks(tables: &Tables, alpha: &Scalar, beta: &Scalar) -> Vec<Check> {
    let max_n = tables.max_n();
    let c = charlier_series(&(beta - alpha), &-alpha, max_n);
    let forward: Vec<Scalar> = (0..=max_n)
        .map(|n| (0..=n).map(|k| &c[k] * tables.s2deg.get(n, k)).sum())
        .collect();
    (0..=max_n)
        .map(|n| {
            let back: Scalar = (0..=n).map(|k| &forward[k] * tables.s1deg.get(n, k)).sum();
            Check::new("charlier.mutual-inversion", n, c[n].clone(), back)
        })
        .collect()
}

pub fn verify_central_bell(lambda: &Scalar, alpha: &Scalar, max_n: usize) -> Result<(), Check> {
    first_failure(central_bell_checks(&Tables::build(lambda, max_n), alpha))
}

pub fn verify_bell_from_charlier(
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    max_n: usize,
) -> Result<(), Check> {
    first_failure(bell_from_charlier_checks(
        &Tables::build(lambda, max_n),
        alpha,
        beta,
    ))
}

pub fn verify_charlier_from_bell(
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    max_n: usize,
) -> Result<(), Check> {
    first_failure(charlier_from_bell_checks(
        &Tables::build(lambda, max_n),
        alpha,
        beta,
    ))
}

/// Smallest `n ≤ max_n` at which the transposed coefficient layout
/// disagrees with the generating function.
pub fn first_transposed_failure(x: &Scalar, alpha: &Scalar, max_n: usize) -> Option<usize> {
    let tables = Tables::build(&Scalar::zero(), max_n);
    transposed_form_checks(&tables, x, alpha)
        .into_iter()
        .find(|c| !c.passed())
        .map(|c| c.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn all_pass(checks: Vec<Check>) {
        if let Err(c) = first_failure(checks) {
            panic!("failed: {c}");
        }
    }

    fn paths() -> Vec<CharlierPath> {
        vec![
            CharlierPath::GeneratingFunction,
            CharlierPath::Explicit,
            CharlierPath::Degenerate(int(0)),
            CharlierPath::Degenerate(ratio(1, 2)),
            CharlierPath::Degenerate(ratio(-1, 3)),
        ]
    }

    #[test]
    fn low_degree_values() {
        let (x, alpha) = (ratio(7, 3), ratio(-1, 2));
        for path in paths() {
            assert_eq!(charlier(0, &x, &alpha, &path), int(1));
            assert_eq!(charlier(1, &x, &alpha, &path), &x - &alpha);
        }
    }

    #[test]
    fn degree_two_at_three_one() {
        // [t²] e^{-t}(1+t)^3 = 3 - 3 + 1/2, so C_2 = 2! · 1/2.
        for path in paths() {
            assert_eq!(charlier(2, &int(3), &int(1), &path), int(1), "{path:?}");
        }
    }

    #[test]
    fn grid_paths_agree() {
        let points = [int(-2), int(0), ratio(1, 2), int(1), int(3)];
        for lambda in [int(0), ratio(1, 2), ratio(-1, 3), int(2)] {
            let tables = Tables::build(&lambda, 10);
            for x in &points {
                for alpha in &points {
                    all_pass(path_agreement_checks(&tables, x, alpha));
                }
            }
        }
    }

    #[test]
    fn degenerate_expansion_is_lambda_free() {
        let tables: Vec<Tables> = [int(0), ratio(1, 2), ratio(-1, 3)]
            .iter()
            .map(|l| Tables::build(l, 10))
            .collect();
        for x in [int(-2), ratio(1, 2), int(3)] {
            for alpha in [int(0), int(1), ratio(-5, 2)] {
                let checks = lambda_independence_checks(&tables, &x, &alpha);
                assert_eq!(checks.len(), 11 * 2);
                all_pass(checks);
            }
        }
    }

    #[test]
    fn central_bell_examples() {
        assert_eq!(verify_central_bell(&ratio(1, 2), &int(2), 0), Ok(()));
        assert_eq!(verify_central_bell(&ratio(1, 2), &int(2), 10), Ok(()));
        assert_eq!(verify_central_bell(&int(0), &int(1), 10), Ok(()));
    }

    #[test]
    fn connection_formulas() {
        assert_eq!(
            verify_bell_from_charlier(&ratio(1, 3), &int(1), &int(2), 10),
            Ok(())
        );
        assert_eq!(
            verify_charlier_from_bell(&ratio(1, 3), &int(1), &int(2), 10),
            Ok(())
        );
        assert_eq!(
            verify_bell_from_charlier(&ratio(1, 3), &int(1), &int(2), 0),
            Ok(())
        );
        let tables = Tables::build(&ratio(-1, 3), 10);
        all_pass(mutual_inversion_checks(&tables, &ratio(1, 2), &int(-2)));
    }

    #[test]
    fn diagonal_connection_uses_zero_argument() {
        // β = α: Bel_{n,λ}(α) = ∑_k C_k(0;-α) S₂,λ(n,k).
        let (lambda, alpha) = (ratio(2, 5), int(3));
        let tables = Tables::build(&lambda, 8);
        let c = charlier_series(&int(0), &-alpha.clone(), 8);
        for n in 0..=8 {
            let rhs: Scalar = (0..=n).map(|k| &c[k] * tables.s2deg.get(n, k)).sum();
            assert_eq!(bell::degenerate_bell_poly(n, &lambda, &alpha), rhs);
        }
    }

    #[test]
    fn transposed_layout_fails_early() {
        let tables = Tables::build(&int(0), 8);
        all_pass(coefficient_form_checks(&tables, &int(3), &int(1)));
        assert_eq!(first_transposed_failure(&int(3), &int(1), 8), Some(1));
        // The two layouts share degree zero.
        assert_eq!(charlier_poly_transposed(&tables, 0, &int(1)), Poly::one());
    }
}
