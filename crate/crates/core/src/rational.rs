//! Exact rationals and the extended line used for interval endpoints.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `base^exp` for any integer exponent; `None` when `base = 0` and `exp < 0`.
pub fn pow_i64(base: &Rational, exp: i64) -> Option<Rational> {
    if exp < 0 && base.is_zero() {
        return None;
    }
    let magnitude = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    Some(if exp < 0 {
        magnitude.recip()
    } else {
        magnitude
    })
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p`, `p/q` or a terminating decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val = BigInt::from_str(frac).ok()?;
        let magnitude = Rational::new(whole_val * &scale + frac_val, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(text).ok().map(Rational::from_integer)
}

/// A rational number or one of the two infinities.
///
/// Variant order gives the numeric order, so the derived `Ord` is correct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        match self {
            ExtendedRational::Finite(q) => ExtendedRational::Finite(q + by),
            other => other.clone(),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl From<i64> for ExtendedRational {
    fn from(n: i64) -> Self {
        ExtendedRational::Finite(int(n))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInfinity => f.write_str("-inf"),
            ExtendedRational::Finite(q) => write!(f, "{q}"),
            ExtendedRational::PosInfinity => f.write_str("inf"),
        }
    }
}

/// A point strictly between `lo` and `hi` (requires `lo < hi`).
pub(crate) fn sample_between(lo: &ExtendedRational, hi: &ExtendedRational) -> Rational {
    use ExtendedRational::*;
    match (lo, hi) {
        (Finite(a), Finite(b)) => (a + b) / int(2),
        (Finite(a), PosInfinity) => a + Rational::one(),
        (NegInfinity, Finite(b)) => b - Rational::one(),
        (NegInfinity, PosInfinity) => Rational::zero(),
        _ => unreachable!("sample_between called on an empty range"),
    }
}

/// Serde adapters that store exact rationals as `"p/q"` strings.
pub mod exact_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {text:?}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = qs.iter().map(format_rational).collect();
            strings.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let strings = Vec::<String>::deserialize(d)?;
            strings
                .iter()
                .map(|t| {
                    parse_rational(t).ok_or_else(|| {
                        serde::de::Error::custom(format!("not an exact rational: {t:?}"))
                    })
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn extended_order() {
        let lo = ExtendedRational::NegInfinity;
        let hi = ExtendedRational::PosInfinity;
        let mid = ExtendedRational::from(rat(-1000, 3));
        assert!(lo < mid && mid < hi);
        assert!(ExtendedRational::from(1) < ExtendedRational::from(2));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i64(&int(2), -3), Some(rat(1, 8)));
        assert_eq!(pow_i64(&int(0), -1), None);
        assert_eq!(pow_i64(&int(0), 0), Some(int(1)));
    }
}
