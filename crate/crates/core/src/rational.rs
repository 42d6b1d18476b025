//! Exact rational scalars and their textual form (`p/q`, or `p` when integral).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `p`, `p/q` or `-p/q`. The denominator must be nonzero.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Parses a comma separated list of rationals, e.g. `1/2,-3,0`.
pub fn parse_vector(text: &str) -> Option<Vec<Rational>> {
    if text.trim().is_empty() {
        return Some(Vec::new());
    }
    text.split(',').map(parse).collect()
}

pub fn format_vector(values: &[Rational]) -> String {
    values.iter().map(format).collect::<Vec<_>>().join(",")
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Serde adapter writing a rational as its `p/q` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format(value).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`")))
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::*;

    pub fn serialize<S: Serializer>(value: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        value.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
            .collect()
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(value: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        value.iter().map(|row| row.iter().map(format).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
                    .collect()
            })
            .collect()
    }
}
