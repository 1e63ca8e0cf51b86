//! Exact rational scalars and the factorial-type products built on them.
//!
//! Every coefficient in this crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Nothing in the
//! exact paths ever rounds.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Scalar = BigRational;

/// Integer-valued scalar.
pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `num / den` as a reduced scalar. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer string.
pub fn parse(text: &str) -> Result<Scalar, Error> {
    let trimmed = text.trim();
    let bad = || Error::Parse(text.to_string());
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(num, den))
        }
        None => BigInt::from_str(trimmed)
            .map(Scalar::from_integer)
            .map_err(|_| bad()),
    }
}

/// Renders as `"p/q"`, or `"p"` for integers.
pub fn render(value: &Scalar) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `x (x - λ) (x - 2λ) ⋯ (x - (n-1)λ)`; the empty product for `n = 0`.
pub fn falling_factorial_lambda(x: &Scalar, n: usize, lambda: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= lambda;
    }
    acc
}

/// `x (x + λ) (x + 2λ) ⋯ (x + (n-1)λ)`.
pub fn rising_factorial_lambda(x: &Scalar, n: usize, lambda: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += lambda;
    }
    acc
}

/// Ordinary falling factorial `(x)_n`.
pub fn falling_factorial(x: &Scalar, n: usize) -> Scalar {
    falling_factorial_lambda(x, n, &Scalar::one())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `n!` as a scalar.
pub fn factorial_scalar(n: usize) -> Scalar {
    Scalar::from_integer(factorial(n))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}

/// `a (a-1) ⋯ (a-n+1) / n!` for rational `a`.
pub fn generalized_binomial(a: &Scalar, n: usize) -> Scalar {
    falling_factorial(a, n) / factorial_scalar(n)
}

/// `(-1)^n` as a scalar.
pub fn sign_power(n: usize) -> Scalar {
    if n % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `x^n` by repeated squaring.
pub fn pow(x: &Scalar, n: usize) -> Scalar {
    num_traits::pow(x.clone(), n)
}

/// `10^-digits`.
pub fn decimal_unit(digits: u32) -> Scalar {
    Scalar::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), digits as usize),
    )
}

/// Nearest multiple of `10^-digits`.
pub fn round_to_digits(value: &Scalar, digits: u32) -> Scalar {
    let unit = decimal_unit(digits);
    (value / &unit).round() * unit
}

/// Smallest multiple of `10^-digits` that is `≥ value`.
pub fn ceil_to_digits(value: &Scalar, digits: u32) -> Scalar {
    let unit = decimal_unit(digits);
    (value / &unit).ceil() * unit
}

/// Fixed-point decimal rendering with `places` digits after the point,
/// rounded half away from zero.
pub fn to_decimal_string(value: &Scalar, places: u32) -> String {
    let scaled = (value.abs() / decimal_unit(places)).round().to_integer();
    let digits = scaled.to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if value.is_negative() && scaled.sign() != num_bigint::Sign::NoSign {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Exact rational image of a finite float; `None` for NaN or infinities.
pub fn from_f64(value: f64) -> Option<Scalar> {
    Scalar::from_float(value)
}

/// Scalars used by the verification grids are small; this is exact for
/// every value with a finite `f64` image and saturates otherwise.
pub fn to_f64(value: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
