//! Exact rational helpers shared by the symbolic layer.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"num/den"`, a plain integer, or a finite decimal such as `"-0.125"`.
///
/// Decimals are converted exactly (`"0.1"` is `1/10`), never through `f64`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || (digits.is_empty() && frac_part.is_empty())
        {
            return Err(err());
        }
        let joined = format!("{digits}{frac_part}");
        let mut num = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(num, den));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| err())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Numerator or denominator too large for a direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn abs_f64(r: &Rational) -> f64 {
    to_f64(&r.abs())
}

pub fn from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapters for rationals and rational sequences as exact strings.
pub mod serde_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Repr::deserialize(d)?.into_rational().map_err(de::Error::custom)
    }

    /// JSON integers are exact too, so both `"3/4"` and `7` are accepted; floats are not.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Text(String),
        Int(i64),
    }

    impl Repr {
        pub(crate) fn into_rational(self) -> Result<Rational, super::ParseRationalError> {
            match self {
                Repr::Text(t) => parse_rational(&t),
                Repr::Int(n) => Ok(super::from_i64(n)),
            }
        }
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        use super::super::Rational;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<super::Repr>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use serde::{de, Deserialize, Deserializer, Serializer};

        use super::super::Rational;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<super::Repr>::deserialize(d)?.map(|r| r.into_rational().map_err(de::Error::custom)).transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), from_i64(-7));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "1e5", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn json_accepts_strings_and_integers_but_not_floats() {
        #[derive(serde::Deserialize)]
        struct W(#[serde(with = "serde_str::vec")] Vec<Rational>);
        let W(v) = serde_json::from_str(r#"["3/4", 2, "-0.5"]"#).unwrap();
        assert_eq!(v, vec![ratio(3, 4), from_i64(2), ratio(-1, 2)]);
        assert!(serde_json::from_str::<W>("[0.5]").is_err());
    }
}
