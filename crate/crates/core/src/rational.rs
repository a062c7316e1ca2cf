//! Exact rational helpers.
//!
//! All fractional invariants are carried as [`Rational`] (an arbitrary
//! precision fraction kept in lowest terms). On the wire they are written as
//! `"p/q"` strings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// Builds `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

/// Renders `r` as `"p/q"`, always including the denominator.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human rendering: integers without a denominator, everything else `p/q`.
pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        to_pq(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_pq(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// `ceil(r)` as `u64`, for non-negative values that fit.
pub fn ceil_u64(r: &Rational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    ceil_int(r).to_u64()
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter writing a single rational as `"p/q"`.
pub mod pq {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_pq(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod pq_opt {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&to_pq(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_pq(&s).map_err(D::Error::custom))
            .transpose()
    }
}

/// Serde adapter for ordered maps with rational values.
pub mod pq_map {
    use super::*;
    use serde::{de::Error, ser::SerializeMap, Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<K, S>(m: &BTreeMap<K, Rational>, s: S) -> Result<S::Ok, S::Error>
    where
        K: serde::Serialize,
        S: Serializer,
    {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &to_pq(v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, K, D>(d: D) -> Result<BTreeMap<K, Rational>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        D: Deserializer<'de>,
    {
        BTreeMap::<K, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| parse_pq(&v).map(|r| (k, r)).map_err(D::Error::custom))
            .collect()
    }
}
