//! Exact rationals and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational used by every exact computation in the crate.
pub type Rational = BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        if s.contains('/') {
            return Err(format!("invalid rational {s:?}"));
        }
        let negative = whole.starts_with('-');
        let digits: String = whole.trim_start_matches(['-', '+']).chars().chain(frac.chars()).collect();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("invalid rational {s:?}"));
        }
        let num: BigInt = digits.parse().map_err(|_| format!("invalid rational {s:?}"))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    let value: Rational = s.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    Ok(value)
}

/// Canonical `"p/q"` text (`"p"` when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub(crate) fn is_zero_vec(values: &[Rational]) -> bool {
    values.iter().all(Zero::is_zero)
}

/// Serde adapter storing a single rational as a string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = RationalText::deserialize(d)?;
        text.into_rational().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a list of rationals as a list of strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let items = Vec::<RationalText>::deserialize(d)?;
        items
            .into_iter()
            .map(|t| t.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

// Integers are accepted where a rational string is expected.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn into_rational(self) -> Result<Rational, String> {
        match self {
            RationalText::Text(s) => parse_rational(&s),
            RationalText::Int(n) => Ok(int(n)),
        }
    }
}
