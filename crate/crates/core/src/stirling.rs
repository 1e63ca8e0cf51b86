//! The four Stirling families as connection coefficients between the bases
//! `{x^n}`, `{(x)_n}` and `{(x)_{n,λ}}`.
//!
//! | kind          | expansion                                 |
//! |---------------|-------------------------------------------|
//! | `Classical1`  | `(x)_n       = ∑ S₁(n,l) x^l`             |
//! | `Classical2`  | `x^n         = ∑ S₂(n,l) (x)_l`           |
//! | `Degenerate1` | `(x)_n       = ∑ S₁,λ(n,l) (x)_{l,λ}`     |
//! | `Degenerate2` | `(x)_{n,λ}   = ∑ S₂,λ(n,l) (x)_l`         |
//!
//! Tables are filled by exact triangular basis change. The column
//! generating functions `(f(t))^k / k!` are available separately through
//! [`stirling_series_oracle`] so the two can be compared.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::check::{first_failure, Check};
use crate::poly::Poly;
use crate::scalar::{self, Scalar};
use crate::series::{self, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StirlingKind {
    Classical1,
    Classical2,
    Degenerate1,
    Degenerate2,
}

impl StirlingKind {
    pub const ALL: [StirlingKind; 4] = [
        StirlingKind::Classical1,
        StirlingKind::Classical2,
        StirlingKind::Degenerate1,
        StirlingKind::Degenerate2,
    ];

    pub fn is_degenerate(self) -> bool {
        matches!(self, StirlingKind::Degenerate1 | StirlingKind::Degenerate2)
    }

    /// The classical kind a degenerate kind collapses to at `λ = 0`.
    pub fn classical(self) -> StirlingKind {
        match self {
            StirlingKind::Degenerate1 => StirlingKind::Classical1,
            StirlingKind::Degenerate2 => StirlingKind::Classical2,
            other => other,
        }
    }
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            StirlingKind::Classical1 => "s1",
            StirlingKind::Classical2 => "s2",
            StirlingKind::Degenerate1 => "s1deg",
            StirlingKind::Degenerate2 => "s2deg",
        };
        f.write_str(name)
    }
}

/// Lower-triangular array indexed by `(n, k)` with `0 ≤ k ≤ n ≤ max_n`.
/// Reads outside the triangle return zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<Scalar>>,
}

impl Triangle {
    pub fn zeros(max_n: usize) -> Self {
        Triangle {
            rows: (0..=max_n).map(|n| vec![Scalar::zero(); n + 1]).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        assert!(
            rows.iter().enumerate().all(|(n, row)| row.len() == n + 1),
            "row n must hold n + 1 entries"
        );
        Triangle { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Scalar {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Borrowing accessor for entries known to be inside the triangle.
    pub fn entry(&self, n: usize, k: usize) -> &Scalar {
        &self.rows[n][k]
    }

    pub fn set(&mut self, n: usize, k: usize, value: Scalar) {
        self.rows[n][k] = value;
    }

    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Row `n` as a polynomial `∑_k T(n,k) x^k`.
    pub fn row_poly(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.rows[n].clone())
    }

    /// Column `k` as `T(0,k), …, T(max_n,k)`.
    pub fn column(&self, k: usize) -> Vec<Scalar> {
        (0..=self.max_n()).map(|n| self.get(n, k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    lambda: Scalar,
    values: Triangle,
}

impl StirlingTable {
    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Zero for the classical kinds.
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

    /// A copy with `delta` added to entry `(n, k)`; used to check that the
    /// verification suites notice a corrupted table.
    pub fn perturbed(&self, n: usize, k: usize, delta: &Scalar) -> StirlingTable {
        let mut out = self.clone();
        if n <= out.max_n() && k <= n {
            let value = out.values.get(n, k) + delta;
            out.values.set(n, k, value);
        }
        out
    }
}

/// Writes each `targets[n]` in the monic basis `basis[0..=n]`.
fn change_basis(targets: &[Poly], basis: &[Poly]) -> Triangle {
    let rows = targets
        .iter()
        .enumerate()
        .map(|(n, target)| {
            let mut residual = target.clone();
            let mut row = vec![Scalar::zero(); n + 1];
            for l in (0..=n).rev() {
                let c = residual.coeff(l);
                if !c.is_zero() {
                    residual = &residual - &basis[l].scale(&c);
                    row[l] = c;
                }
            }
            debug_assert!(
                residual.is_zero(),
                "target {n} is not in the span of the basis"
            );
            row
        })
        .collect();
    Triangle::from_rows(rows)
}

fn monomials(max_n: usize) -> Vec<Poly> {
    (0..=max_n)
        .map(|n| {
            Poly::from_coeffs({
                let mut c = vec![Scalar::zero(); n + 1];
                c[n] = Scalar::one();
                c
            })
        })
        .collect()
}

fn falling_basis(max_n: usize, lambda: &Scalar) -> Vec<Poly> {
    (0..=max_n)
        .map(|n| Poly::falling_factorial_lambda(n, lambda))
        .collect()
}

/// Builds the `(n, k)` triangle of one Stirling family up to `max_n`.
/// `lambda` is ignored (stored as zero) for the classical kinds.
pub fn stirling_table(kind: StirlingKind, lambda: &Scalar, max_n: usize) -> StirlingTable {
    let one = Scalar::one();
    let (lambda, targets, basis) = match kind {
        StirlingKind::Classical1 => (Scalar::zero(), falling_basis(max_n, &one), monomials(max_n)),
        StirlingKind::Classical2 => (Scalar::zero(), monomials(max_n), falling_basis(max_n, &one)),
        StirlingKind::Degenerate1 => (
            lambda.clone(),
            falling_basis(max_n, &one),
            falling_basis(max_n, lambda),
        ),
        StirlingKind::Degenerate2 => (
            lambda.clone(),
            falling_basis(max_n, lambda),
            falling_basis(max_n, &one),
        ),
    };
    StirlingTable {
        kind,
        lambda,
        values: change_basis(&targets, &basis),
    }
}

/// The series whose `k`-th power over `k!` generates column `k`.
fn column_base(kind: StirlingKind, lambda: &Scalar, order: usize) -> Series {
    match kind {
        StirlingKind::Classical1 => series::degenerate_log(&Scalar::zero(), order),
        StirlingKind::Classical2 => Series::t(order)
            .exp()
            .expect("zero constant term")
            .sub(&Series::one(order))
            .expect("same order"),
        StirlingKind::Degenerate1 => series::degenerate_log(lambda, order),
        StirlingKind::Degenerate2 => series::degenerate_exp_minus_one(lambda, order),
    }
}

/// Column `k` of a family, `n = 0..=max_n`, read off the EGF of
/// `(f(t))^k / k!` where `f` is `log(1+t)`, `e^t - 1`, `log_λ(1+t)` or
/// `e_λ(t) - 1`.
pub fn stirling_series_oracle(
    kind: StirlingKind,
    lambda: &Scalar,
    k: usize,
    max_n: usize,
) -> Vec<Scalar> {
    let order = series::default_order(max_n);
    column_base(kind, lambda, order)
        .powi(k)
        .scale(&(Scalar::one() / scalar::factorial_scalar(k)))
        .egf_coefficients(max_n)
}

/// `∑_m second(n,m) first(m,k) = δ_{nk}` and the transposed product, one
/// check per `(n, k)` and orientation.
pub fn orthogonality_checks(
    identity: &'static str,
    first: &StirlingTable,
    second: &StirlingTable,
) -> Vec<Check> {
    let max_n = first.max_n().min(second.max_n());
    let mut out = Vec::with_capacity(2 * (max_n + 1) * (max_n + 1));
    for (a, b) in [(second, first), (first, second)] {
        for n in 0..=max_n {
            for k in 0..=max_n {
                let value: Scalar = (k..=n).map(|m| a.get(n, m) * b.get(m, k)).sum();
                let expected = if n == k {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                out.push(Check::at(identity, n, k, value, expected));
            }
        }
    }
    out
}

/// Orthogonality of the degenerate pair at `lambda` and of the classical
/// pair, for all `n, k ≤ max_n`. Returns the first failing entry.
pub fn verify_inversion(lambda: &Scalar, max_n: usize) -> Result<(), Check> {
    let zero = Scalar::zero();
    first_failure(orthogonality_checks(
        "stirling.inversion.degenerate",
        &stirling_table(StirlingKind::Degenerate1, lambda, max_n),
        &stirling_table(StirlingKind::Degenerate2, lambda, max_n),
    ))?;
    first_failure(orthogonality_checks(
        "stirling.inversion.classical",
        &stirling_table(StirlingKind::Classical1, &zero, max_n),
        &stirling_table(StirlingKind::Classical2, &zero, max_n),
    ))
}

/// Table column `k` against [`stirling_series_oracle`], one check per entry.
pub fn oracle_checks(table: &StirlingTable) -> Vec<Check> {
    let max_n = table.max_n();
    let mut out = Vec::new();
    for k in 0..=max_n {
        let column = stirling_series_oracle(table.kind(), table.lambda(), k, max_n);
        for (n, expected) in column.into_iter().enumerate() {
            out.push(Check::at(
                "stirling.series-oracle",
                n,
                k,
                table.get(n, k),
                expected,
            ));
        }
    }
    out
}
