//! One evaluated instance of an exact identity.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// Stable identifier, e.g. `"bell2.convolution"`.
    pub identity: &'static str,
    pub n: usize,
    pub k: Option<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// Zero for exact identities.
    pub tolerance: Scalar,
}

impl Check {
    pub fn new(identity: &'static str, n: usize, lhs: Scalar, rhs: Scalar) -> Self {
        Check {
            identity,
            n,
            k: None,
            lhs,
            rhs,
            tolerance: Scalar::zero(),
        }
    }

    pub fn at(identity: &'static str, n: usize, k: usize, lhs: Scalar, rhs: Scalar) -> Self {
        Check {
            identity,
            n,
            k: Some(k),
            lhs,
            rhs,
            tolerance: Scalar::zero(),
        }
    }

    /// `|lhs - rhs| ≤ tolerance` instead of equality.
    pub fn within(
        identity: &'static str,
        n: usize,
        lhs: Scalar,
        rhs: Scalar,
        tolerance: Scalar,
    ) -> Self {
        Check {
            identity,
            n,
            k: None,
            lhs,
            rhs,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        if self.tolerance.is_zero() {
            self.lhs == self.rhs
        } else {
            (&self.lhs - &self.rhs).abs() <= self.tolerance
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.identity, self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        write!(
            f,
            ": {} vs {}",
            scalar::render(&self.lhs),
            scalar::render(&self.rhs)
        )?;
        if !self.tolerance.is_zero() {
            write!(f, " (tolerance {:e})", scalar::to_f64(&self.tolerance))?;
        }
        Ok(())
    }
}

/// The first failing check, if any.
pub fn first_failure(checks: impl IntoIterator<Item = Check>) -> Result<(), Check> {
    match checks.into_iter().find(|c| !c.passed()) {
        Some(c) => Err(c),
        None => Ok(()),
    }
}
