//! Exact rational numbers.
//!
//! Every solver path in this crate works over [`Rational`], an arbitrary
//! precision fraction that is always kept in canonical form
//! (`gcd(|num|, den) = 1`, `den >= 1`). Text and JSON use the `"p/q"` form;
//! integers may be written bare.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use thiserror::Error;

/// Arbitrary precision canonical fraction.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer {0:?} in rational literal")]
    BadInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("negative denominator in {0:?}")]
    NegativeDenominator(String),
}

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"-p"` or `"p/q"` with `q > 0`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| {
        BigInt::from_str(part.trim()).map_err(|_| ParseRationalError::BadInteger(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            if den.is_negative() {
                return Err(ParseRationalError::NegativeDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Least common multiple of the denominators, `1` for an empty input.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Exact conversion of a finite float (every finite `f64` is a dyadic rational).
pub fn from_f64_exact(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Ratios of huge integers overflow `to_f64`; fall back to scaled division.
        let shift = value.numer().bits().max(value.denom().bits()).saturating_sub(1000);
        let num = (value.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let den = (value.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// Displays a slice of rationals as `[a, b, c]`.
pub struct RationalList<'a>(pub &'a [Rational]);

impl fmt::Display for RationalList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }
}

/// `#[serde(with = "...")]` adapter: writes `"p/q"`, reads an integer or `"p/q"`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        de.deserialize_any(RationalVisitor)
    }
}

/// Same as [`serde_rational`] for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    struct Wrapped(#[serde(with = "serde_rational")] Rational);

    pub fn serialize<S: Serializer>(values: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<Wrapped> = Vec::deserialize(de)?;
        Ok(raw.into_iter().map(|w| w.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" -2/4 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("6/3").unwrap(), int(2));
        assert_eq!(parse_rational("0/7").unwrap(), int(0));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(parse_rational("3/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("1/-2"), Err(ParseRationalError::NegativeDenominator(_))));
        assert!(matches!(parse_rational("x"), Err(ParseRationalError::BadInteger(_))));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
    }

    #[test]
    fn canonical_form_is_kept() {
        let r = ratio(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-5/2");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn lcm_of_denominators_matches_hand_value() {
        let values = [ratio(1, 3), ratio(2, 3), ratio(1, 4), int(0)];
        assert_eq!(lcm_of_denominators(&values), BigInt::from(12));
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(from_f64_exact(0.375).unwrap(), ratio(3, 8));
        assert!(from_f64_exact(f64::NAN).is_none());
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000) {
            let r = ratio(num, den);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
