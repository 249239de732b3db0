//! Exact rational parameters (β, γ, δ, ξ, thresholds).

use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("`{0}` is not a rational number (expected `a/b`, an integer, or a decimal)")]
pub struct ParseRationalError(pub String);

/// Parses `a/b`, an integer, or a finite decimal such as `0.05`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| err())?;
        let b: i64 = b.trim().parse().map_err(|_| err())?;
        if b == 0 {
            return Err(err());
        }
        return Ok(Rational::new(a, b));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(err());
    }
    let scale = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| err())? };
    let frac_v: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| err())? };
    let num = int.checked_mul(scale).and_then(|v| v.checked_add(frac_v)).ok_or_else(err)?;
    Ok(Rational::new(if neg { -num } else { num }, scale))
}

/// `a/b` or `a` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

/// Smallest integer `k ≥ r`, clamped at 0.
pub fn ceil_usize(r: &Rational) -> usize {
    r.ceil().to_integer().max(0) as usize
}

/// Largest integer `k ≤ r`, clamped at 0.
pub fn floor_usize(r: &Rational) -> usize {
    r.floor().to_integer().max(0) as usize
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("0.05"), Ok(Rational::new(1, 20)));
        assert_eq!(parse_rational("13/2"), Ok(Rational::new(13, 2)));
        assert_eq!(parse_rational("3"), Ok(Rational::from_integer(3)));
        assert_eq!(parse_rational(".5"), Ok(Rational::new(1, 2)));
        assert_eq!(parse_rational("-0.25"), Ok(Rational::new(-1, 4)));
        for bad in ["", "x", "1/0", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rounding_and_format() {
        assert_eq!(ceil_usize(&Rational::new(27, 5)), 6);
        assert_eq!(floor_usize(&Rational::new(36, 5)), 7);
        assert_eq!(format_rational(&Rational::new(13, 2)), "13/2");
        assert_eq!(format_rational(&Rational::new(12, 2)), "6");
    }
}
