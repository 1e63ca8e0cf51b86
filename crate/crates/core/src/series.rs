//! Truncated formal power series over [`Scalar`].
//!
//! A [`Series`] of order `N` stores the ordinary coefficients of
//! `t^0, …, t^N`. Every operation is exact modulo `t^{N+1}`. The
//! exponential-generating-function view is available through
//! [`Series::egf_coefficient`]; coefficients themselves are never divided
//! by `n!` internally.
//!
//! This module is deliberately independent of the closed-form products in
//! [`crate::scalar`]: [`degenerate_exp`] goes through the binomial series of
//! `(1 + λt)^{x/λ}` rather than through `(x)_{n,λ}`, so that comparing the
//! two is a real check.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

/// Truncation order used when a caller needs coefficients up to `n_max`.
pub fn default_order(n_max: usize) -> usize {
    2 * n_max + 2
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The formal variable `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(Scalar::one(), 1, order)
    }

    /// `c t^k`, truncated away if `k > order`.
    pub fn monomial(c: Scalar, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Series { coeffs }
    }

    /// Builds `∑ a_n t^n / n!` from EGF values `a_n`.
    pub fn from_egf(values: &[Scalar], order: usize) -> Self {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(n, a)| a / scalar::factorial_scalar(n))
            .collect();
        Self::from_coeffs(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `n! · [t^n]`. Panics if `n` exceeds the truncation order, since the
    /// value would be unknown rather than zero.
    pub fn egf_coefficient(&self, n: usize) -> Scalar {
        assert!(
            n <= self.order(),
            "coefficient {n} requested from a series truncated at order {}",
            self.order()
        );
        &self.coeffs[n] * scalar::factorial_scalar(n)
    }

    /// EGF coefficients `0..=n_max`.
    pub fn egf_coefficients(&self, n_max: usize) -> Vec<Scalar> {
        (0..=n_max).map(|n| self.egf_coefficient(n)).collect()
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, k: usize) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    fn require_constant(&self, expected: &'static str, ok: bool) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::ConstantTerm {
                expected,
                found: scalar::render(&self.coeffs[0]),
            })
        }
    }

    /// `exp(self)` via `n f_n = ∑_{k=1}^{n} k a_k f_{n-k}`, which follows
    /// from `f' = a' f`.
    pub fn exp(&self) -> Result<Series> {
        self.require_constant("0", self.coeffs[0].is_zero())?;
        let order = self.order();
        let mut f = vec![Scalar::zero(); order + 1];
        f[0] = Scalar::one();
        for n in 1..=order {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * scalar::int(k as i64) * &f[n - k];
                }
            }
            f[n] = acc / scalar::int(n as i64);
        }
        Ok(Series { coeffs: f })
    }

    /// `self^a` for rational `a` through `∑_k C(a, k) u^k`, where
    /// `self = 1 + u`.
    pub fn rational_power(&self, a: &Scalar) -> Result<Series> {
        self.require_constant("1", self.coeffs[0].is_one())?;
        let order = self.order();
        let u = self.sub(&Series::one(order))?;
        let mut acc = Series::zero(order);
        let mut u_pow = Series::one(order);
        for k in 0..=order {
            acc = acc.add(&u_pow.scale(&scalar::generalized_binomial(a, k)))?;
            u_pow = u_pow.mul(&u)?;
        }
        Ok(acc)
    }

    /// `self ∘ inner`, i.e. `self(inner(t))`, by Horner's scheme.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        inner.require_constant("0", inner.coeffs[0].is_zero())?;
        let order = self.order();
        let mut acc = Series::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

pub fn series_add(a: &Series, b: &Series) -> Result<Series> {
    a.add(b)
}

pub fn series_mul(a: &Series, b: &Series) -> Result<Series> {
    a.mul(b)
}

pub fn series_scale(a: &Series, c: &Scalar) -> Series {
    a.scale(c)
}

pub fn series_exp(a: &Series) -> Result<Series> {
    a.exp()
}

pub fn series_rational_power(base: &Series, a: &Scalar) -> Result<Series> {
    base.rational_power(a)
}

pub fn series_compose(outer: &Series, inner: &Series) -> Result<Series> {
    outer.compose(inner)
}

/// `e_λ^x(t) = (1 + λt)^{x/λ}`, and `e^{xt}` when `λ = 0`.
pub fn degenerate_exp(x: &Scalar, lambda: &Scalar, order: usize) -> Series {
    if lambda.is_zero() {
        return Series::t(order).scale(x).exp().expect("zero constant term");
    }
    let base = Series::from_coeffs(vec![Scalar::one(), lambda.clone()], order);
    base.rational_power(&(x / lambda))
        .expect("constant term is one")
}

/// `e_λ(t) - 1`, the inner series of every degenerate substitution.
pub fn degenerate_exp_minus_one(lambda: &Scalar, order: usize) -> Series {
    degenerate_exp(&Scalar::one(), lambda, order)
        .sub(&Series::one(order))
        .expect("same order")
}

/// `log_λ(1 + t) = ((1 + t)^λ - 1) / λ`, and `log(1 + t)` when `λ = 0`.
pub fn degenerate_log(lambda: &Scalar, order: usize) -> Series {
    if lambda.is_zero() {
        let coeffs = (0..=order)
            .map(|n| match n {
                0 => Scalar::zero(),
                _ => scalar::sign_power(n - 1) / scalar::int(n as i64),
            })
            .collect();
        return Series::from_coeffs(coeffs, order);
    }
    let base = Series::from_coeffs(vec![Scalar::one(), Scalar::one()], order);
    base.rational_power(lambda)
        .expect("constant term is one")
        .sub(&Series::one(order))
        .expect("same order")
        .scale(&(Scalar::one() / lambda))
}
