//! Poisson degenerate moments `E[(X - α + β)_{n,λ}]`, `X ~ Poisson(α)`.
//!
//! Two estimators, both independent of the generating-function and
//! Stirling machinery:
//!
//! * [`poisson_degenerate_moment`] sums `e^{-α} ∑_k (k-α+β)_{n,λ} α^k/k!`
//!   in exact rationals, stopping once a rigorous tail bound is met, and
//!   multiplies by a rational enclosure of `e^{-α}`. The result is rounded
//!   to a decimal grid of at least 64 places, and the reported
//!   `error_bound` covers tail, `e^{-α}` truncation and rounding.
//! * [`poisson_sample_moment`] is a seeded Monte Carlo average in `f64`.
//!
//! Sampling uses ChaCha8 (`rand_chacha`). Samples are split into
//! [`SHARDS`] fixed shards; shard `i` draws from stream `i` of the
//! generator seeded with `seed`, and shard statistics are merged in shard
//! order, so the result is independent of the thread count.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::scalar::{self, binomial, falling_factorial_lambda, pow, Scalar};

/// Number of independent substreams used by the Monte Carlo estimator.
pub const SHARDS: u64 = 64;

/// Hard cap on the number of Poisson terms summed.
pub const MAX_TERMS: usize = 1_000_000;

/// Minimum number of decimal places carried by a partial-sum estimate.
pub const MIN_DIGITS: u32 = 64;

/// Largest mean for which sampling uses sequential-search inversion.
pub const INVERSION_LIMIT: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentMethod {
    PartialSum,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentParams {
    pub n: usize,
    pub lambda: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    pub value: Scalar,
    /// Rigorous for [`MomentMethod::PartialSum`]; three standard errors for
    /// [`MomentMethod::MonteCarlo`].
    pub error_bound: Scalar,
    pub method: MomentMethod,
    pub params: MomentParams,
    /// Terms summed or samples drawn.
    pub count: u64,
}

impl MomentEstimate {
    pub fn value_f64(&self) -> f64 {
        scalar::to_f64(&self.value)
    }

    pub fn error_bound_f64(&self) -> f64 {
        scalar::to_f64(&self.error_bound)
    }

    /// Does `[value - error_bound, value + error_bound]` contain `exact`?
    pub fn covers(&self, exact: &Scalar) -> bool {
        (&self.value - exact).abs() <= self.error_bound
    }
}

fn require_positive_alpha(alpha: &Scalar) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "Poisson mean must be positive, got {}",
            scalar::render(alpha)
        )))
    }
}

fn grid_digits(target: f64) -> u32 {
    let needed = (-target.log10()).ceil() + 1.0;
    MIN_DIGITS.max(needed.max(0.0) as u32)
}

/// Rational `E` and `err` with `|e^{-α} - E| ≤ err ≤ eps`, from the
/// alternating Taylor series.
fn exp_neg_enclosure(alpha: &Scalar, eps: &Scalar) -> (Scalar, Scalar) {
    let mut sum = Scalar::zero();
    let mut term = Scalar::one();
    let mut j: i64 = 0;
    loop {
        sum += &term;
        let next = -&term * alpha / scalar::int(j + 1);
        // Past j + 1 > α the magnitudes decrease, so the first omitted term
        // bounds the remainder.
        if scalar::int(j + 1) > *alpha && next.abs() <= *eps {
            return (sum, next.abs());
        }
        term = next;
        j += 1;
    }
}

/// `E[(X - α + β)_{n,λ}]` to within `precision_target` (absolute).
pub fn poisson_degenerate_moment(
    n: usize,
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    precision_target: f64,
) -> Result<MomentEstimate> {
    require_positive_alpha(alpha)?;
    if !(precision_target.is_finite() && precision_target > 0.0) {
        return Err(Error::Parameter(format!(
            "precision target must be positive and finite, got {precision_target}"
        )));
    }
    let target = scalar::from_f64(precision_target).expect("finite");
    let digits = grid_digits(precision_target);
    let grid = scalar::decimal_unit(digits);
    let tail_target = &target / scalar::int(2);
    let half = scalar::ratio(1, 2);

    let shift = beta - alpha;
    // |k + shift - jλ| ≤ k + reach for every factor with j < n.
    let reach = shift.abs() + lambda.abs() * scalar::int(n as i64);

    let mut weight = Scalar::one();
    let mut partial = Scalar::zero();
    let mut tail = None;
    for k in 0..MAX_TERMS {
        let k_scalar = scalar::int(k as i64);
        let base = &k_scalar + &reach;
        if base.is_positive() {
            // B_k = (k + reach)^n α^k / k! bounds the k-th term and
            // B_{k+1} / B_k = (1 + 1/(k + reach))^n α / (k + 1), decreasing in k.
            let growth = pow(&(Scalar::one() + Scalar::one() / &base), n) * alpha
                / scalar::int(k as i64 + 1);
            if growth <= half {
                let bound = pow(&base, n) * &weight * scalar::int(2);
                if bound <= tail_target {
                    tail = Some((bound, k));
                    break;
                }
            }
        }
        partial += falling_factorial_lambda(&(&k_scalar + &shift), n, lambda) * &weight;
        weight = weight * alpha / scalar::int(k as i64 + 1);
    }
    let (tail, terms) = tail.ok_or(Error::IterationCap(MAX_TERMS))?;

    let eps = &grid / (partial.abs() + Scalar::one());
    let (exp_neg, exp_err) = exp_neg_enclosure(alpha, &eps);
    let value = scalar::round_to_digits(&(&exp_neg * &partial), digits);
    let error_bound = tail + exp_err * partial.abs() + &grid / scalar::int(2);
    Ok(MomentEstimate {
        value,
        error_bound: scalar::ceil_to_digits(&error_bound, digits),
        method: MomentMethod::PartialSum,
        params: MomentParams {
            n,
            lambda: lambda.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
        },
        count: terms as u64,
    })
}

/// Poisson sampler: sequential-search inversion for small means,
/// `rand_distr`'s rejection sampler above [`INVERSION_LIMIT`].
#[derive(Clone, Debug)]
pub enum PoissonSampler {
    Inversion { mean: f64, p0: f64 },
    Rejection(Poisson<f64>),
}

impl PoissonSampler {
    pub fn new(mean: f64) -> Result<Self> {
        if !(mean.is_finite() && mean > 0.0) {
            return Err(Error::Parameter(format!(
                "Poisson mean must be positive, got {mean}"
            )));
        }
        if mean <= INVERSION_LIMIT {
            Ok(PoissonSampler::Inversion {
                mean,
                p0: (-mean).exp(),
            })
        } else {
            Poisson::new(mean)
                .map(PoissonSampler::Rejection)
                .map_err(|e| Error::Parameter(e.to_string()))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            PoissonSampler::Inversion { mean, p0 } => {
                let u: f64 = rng.gen();
                let mut x = 0u64;
                let mut p = *p0;
                let mut cdf = p;
                // Stops once the mass left is below rounding; the guard only
                // matters for u within an ulp of 1.
                while u > cdf && p > 0.0 {
                    x += 1;
                    p *= mean / x as f64;
                    cdf += p;
                }
                x
            }
            PoissonSampler::Rejection(dist) => dist.sample(rng) as u64,
        }
    }
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Welford { count, mean, m2 }
    }
}

fn falling_f64(x: f64, n: usize, lambda: f64) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (x - j as f64 * lambda))
}

/// Monte Carlo estimate of `E[(X - α + β)_{n,λ}]` with `num_samples` draws.
/// Deterministic in `seed`.
pub fn poisson_sample_moment(
    n: usize,
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    num_samples: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    require_positive_alpha(alpha)?;
    if num_samples == 0 {
        return Err(Error::Parameter("at least one sample is required".into()));
    }
    let params = MomentParams {
        n,
        lambda: lambda.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    if n == 0 {
        return Ok(MomentEstimate {
            value: Scalar::one(),
            error_bound: Scalar::zero(),
            method: MomentMethod::MonteCarlo,
            params,
            count: num_samples,
        });
    }

    let mean = scalar::to_f64(alpha);
    let shift = scalar::to_f64(&(beta - alpha));
    let lambda_f = scalar::to_f64(lambda);
    let sampler = PoissonSampler::new(mean)?;

    let shard_stats: Vec<Welford> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let size = num_samples / SHARDS + u64::from(shard < num_samples % SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut stats = Welford::default();
            for _ in 0..size {
                let x = sampler.sample(&mut rng) as f64;
                stats.push(falling_f64(x + shift, n, lambda_f));
            }
            stats
        })
        .collect();
    let total = shard_stats
        .into_iter()
        .fold(Welford::default(), Welford::merge);

    let variance = if total.count > 1 {
        total.m2 / (total.count - 1) as f64
    } else {
        0.0
    };
    let std_error = (variance / total.count as f64).sqrt();
    let invalid = || Error::Parameter("sample moment overflowed f64".into());
    Ok(MomentEstimate {
        value: scalar::from_f64(total.mean).ok_or_else(invalid)?,
        error_bound: scalar::from_f64(3.0 * std_error).ok_or_else(invalid)?,
        method: MomentMethod::MonteCarlo,
        params,
        count: total.count,
    })
}

/// `|estimate - exact| ≤ error_bound`, as a [`Check`].
pub fn coverage_check(identity: &'static str, estimate: &MomentEstimate, exact: &Scalar) -> Check {
    Check::within(
        identity,
        estimate.params.n,
        estimate.value.clone(),
        exact.clone(),
        estimate.error_bound.clone(),
    )
}

/// Shift expansion
/// `E[(X-α+β)_{n,λ}] = ∑_k C(n,k) (β-α)_{n-k,λ} E[(X)_{k,λ}]`, with both
/// sides estimated by partial sums and the tolerance accumulated from their
/// bounds.
pub fn shift_expansion_check(
    n: usize,
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    precision_target: f64,
) -> Result<Check> {
    let direct = poisson_degenerate_moment(n, lambda, alpha, beta, precision_target)?;
    let shift = beta - alpha;
    let mut combined = Scalar::zero();
    let mut tolerance = direct.error_bound.clone();
    for k in 0..=n {
        let raw = poisson_degenerate_moment(k, lambda, alpha, alpha, precision_target)?;
        let weight = binomial(n, k) * falling_factorial_lambda(&shift, n - k, lambda);
        tolerance += weight.abs() * &raw.error_bound;
        combined += weight * raw.value;
    }
    // Exact agreement is possible (e.g. n = 0); keep the comparison a
    // tolerance check regardless.
    if tolerance.is_zero() {
        tolerance = scalar::decimal_unit(MIN_DIGITS);
    }
    Ok(Check::within(
        "poisson.shift-expansion",
        n,
        direct.value,
        combined,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{bell_poly, stirling_type_table, two_variable_bell_series};
    use crate::scalar::{int, ratio};

    #[test]
    fn zeroth_moment_is_one() {
        for alpha in [ratio(1, 2), int(3)] {
            let est = poisson_degenerate_moment(0, &ratio(1, 3), &alpha, &int(7), 1e-20).unwrap();
            assert!(est.covers(&int(1)));
            assert!(est.error_bound <= scalar::from_f64(1e-20).unwrap());
        }
        let mc = poisson_sample_moment(0, &int(1), &int(2), &int(5), 100, 9).unwrap();
        assert_eq!(mc.value, int(1));
        assert_eq!(mc.error_bound, int(0));
    }

    #[test]
    fn first_moment_is_the_mean() {
        let est = poisson_degenerate_moment(1, &ratio(1, 2), &int(3), &int(3), 1e-20).unwrap();
        assert!(est.covers(&int(3)));
    }

    #[test]
    fn partial_sum_matches_two_variable_bell() {
        let lambda = ratio(1, 2);
        let exact = two_variable_bell_series(&lambda, &int(2), &int(1), 4);
        let est = poisson_degenerate_moment(4, &lambda, &int(2), &int(1), 1e-20).unwrap();
        assert!(est.covers(&exact[4]), "{} vs {}", est.value_f64(), exact[4]);
        assert!(est.error_bound_f64() <= 1e-20);
        assert_eq!(est.method, MomentMethod::PartialSum);
    }

    #[test]
    fn partial_sum_carries_many_digits() {
        // With λ = 0, β = α this is E[X^2] = α² + α exactly.
        let est = poisson_degenerate_moment(2, &int(0), &ratio(1, 2), &ratio(1, 2), 1e-55).unwrap();
        assert!(est.covers(&ratio(3, 4)));
        assert_eq!(
            scalar::to_decimal_string(&est.value, 50),
            scalar::to_decimal_string(&ratio(3, 4), 50)
        );
        assert!(est.error_bound <= scalar::from_f64(1e-55).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(poisson_degenerate_moment(2, &int(0), &int(0), &int(0), 1e-10).is_err());
        assert!(poisson_degenerate_moment(2, &int(0), &int(-1), &int(0), 1e-10).is_err());
        assert!(poisson_degenerate_moment(2, &int(0), &int(1), &int(0), 0.0).is_err());
        assert!(poisson_degenerate_moment(2, &int(0), &int(1), &int(0), f64::NAN).is_err());
        assert!(poisson_sample_moment(2, &int(0), &int(0), &int(0), 10, 1).is_err());
        assert!(poisson_sample_moment(2, &int(0), &int(1), &int(0), 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_second_moment() {
        let alpha = int(2);
        let est = poisson_sample_moment(2, &int(0), &alpha, &alpha, 1_000_000, 42).unwrap();
        assert!(est.covers(&bell_poly(2, &alpha)), "{}", est.value_f64());
        assert_eq!(est.count, 1_000_000);
    }

    #[test]
    fn monte_carlo_central_moment() {
        let lambda = ratio(1, 2);
        let exact: Scalar = stirling_type_table(&lambda, 3).values().row(3).iter().sum();
        let est = poisson_sample_moment(3, &lambda, &int(1), &int(0), 1_000_000, 42).unwrap();
        assert!(est.covers(&exact), "{} vs {}", est.value_f64(), exact);
    }

    #[test]
    fn monte_carlo_is_deterministic_in_seed() {
        let a = poisson_sample_moment(4, &ratio(1, 2), &int(3), &int(1), 10_007, 5).unwrap();
        let b = poisson_sample_moment(4, &ratio(1, 2), &int(3), &int(1), 10_007, 5).unwrap();
        let c = poisson_sample_moment(4, &ratio(1, 2), &int(3), &int(1), 10_007, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.value, c.value);
        assert_eq!(a.count, 10_007);
    }

    #[test]
    fn large_mean_uses_rejection() {
        let sampler = PoissonSampler::new(50.0).unwrap();
        assert!(matches!(sampler, PoissonSampler::Rejection(_)));
        let est = poisson_sample_moment(1, &int(0), &int(50), &int(50), 200_000, 1).unwrap();
        assert!(est.covers(&int(50)));
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let data: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Welford::default();
        data.iter().for_each(|&x| whole.push(x));
        let (left, right) = data.split_at(333);
        let mut a = Welford::default();
        let mut b = Welford::default();
        left.iter().for_each(|&x| a.push(x));
        right.iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert_eq!(merged.count, whole.count);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-8 * whole.m2);
    }

    #[test]
    fn shift_expansion_holds() {
        for beta in [int(0), int(2)] {
            let check = shift_expansion_check(5, &ratio(-1, 3), &int(3), &beta, 1e-20).unwrap();
            assert!(check.passed(), "{check}");
        }
    }
}
