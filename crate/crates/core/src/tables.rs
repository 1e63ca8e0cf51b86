//! Per-λ bundle of every triangle the identity checks read from.

use num_traits::Zero;

use crate::bell::{self, StirlingTypeTable};
use crate::scalar::Scalar;
use crate::stirling::{stirling_table, StirlingKind, StirlingTable};

#[derive(Clone, Debug)]
pub struct Tables {
    lambda: Scalar,
    max_n: usize,
    pub s1: StirlingTable,
    pub s2: StirlingTable,
    pub s1deg: StirlingTable,
    pub s2deg: StirlingTable,
    /// Derived from `s2deg`, so a corrupted `s2deg` propagates here.
    pub stirling_type: StirlingTypeTable,
}

impl Tables {
    pub fn build(lambda: &Scalar, max_n: usize) -> Self {
        let zero = Scalar::zero();
        let s2deg = stirling_table(StirlingKind::Degenerate2, lambda, max_n);
        Self::assemble(
            lambda,
            max_n,
            stirling_table(StirlingKind::Classical1, &zero, max_n),
            stirling_table(StirlingKind::Classical2, &zero, max_n),
            stirling_table(StirlingKind::Degenerate1, lambda, max_n),
            s2deg,
        )
    }

    fn assemble(
        lambda: &Scalar,
        max_n: usize,
        s1: StirlingTable,
        s2: StirlingTable,
        s1deg: StirlingTable,
        s2deg: StirlingTable,
    ) -> Self {
        let stirling_type = bell::stirling_type_from(&s2deg);
        Tables {
            lambda: lambda.clone(),
            max_n,
            s1,
            s2,
            s1deg,
            s2deg,
            stirling_type,
        }
    }

    /// Adds `delta` to `S₂,λ(n,k)` and rebuilds everything derived from it.
    pub fn with_corrupted_s2deg(&self, n: usize, k: usize, delta: &Scalar) -> Self {
        Self::assemble(
            &self.lambda,
            self.max_n,
            self.s1.clone(),
            self.s2.clone(),
            self.s1deg.clone(),
            self.s2deg.perturbed(n, k, delta),
        )
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, kind: StirlingKind) -> &StirlingTable {
        match kind {
            StirlingKind::Classical1 => &self.s1,
            StirlingKind::Classical2 => &self.s2,
            StirlingKind::Degenerate1 => &self.s1deg,
            StirlingKind::Degenerate2 => &self.s2deg,
        }
    }
}
