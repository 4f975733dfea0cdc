//! Arbitrary-precision rationals and their `p/q` text form.

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};

use crate::error::{Result, UmbraError};

/// Exact scalar. Always normalized: positive denominator, reduced.
pub type Rational = num::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn is_decimal_integer(s: &str, allow_sign: bool) -> bool {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"p/q"` or `"p"`: decimal integers, optional leading minus on `p`,
/// `q` strictly positive.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || UmbraError::ParseRational(text.to_string());
    let (num_src, den_src) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if !is_decimal_integer(num_src, true) {
        return Err(bad());
    }
    let num: BigInt = num_src.parse().map_err(|_| bad())?;
    let den: BigInt = match den_src {
        Some(d) if is_decimal_integer(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form, `"p/q"` or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Comma-separated list of rational literals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled quotient when numerator and denominator overflow f64.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serde adapter storing a [`Rational`] as its `"p/q"` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
