//! Exact rational coefficients.
//!
//! Every coefficient in the core lives in `Q`. The alias below is backed by
//! `num-rational`, which keeps values in lowest terms with a positive
//! denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Arbitrary-precision rational number.
pub type Scalar = BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Scalar::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as an integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Renders a rational as `p` or `p/q`.
pub fn format_scalar(value: &Scalar) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError(pub String);

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}", self.0)
    }
}

impl std::error::Error for ScalarParseError {}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25` exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let err = || ScalarParseError(text.to_string());
    let s = text.trim();
    if s.is_empty() || s.len() > 4096 {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num).ok_or_else(err)?;
        let den = parse_int(den).ok_or_else(err)?;
        if den.is_zero() || den.is_negative() {
            return Err(err());
        }
        return Ok(Scalar::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if whole.len() - whole_digits.len() > 1 || whole_digits.is_empty() {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num = parse_int(&digits).ok_or_else(err)?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Scalar::new(num, den));
    }
    parse_int(s).map(Scalar::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Serde adapter storing rationals as `"p/q"` strings.
pub mod serde_scalar {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Scalar>`.
pub mod serde_scalar_vec {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(format_scalar))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_scalar(t).map_err(D::Error::custom))
            .collect()
    }
}
