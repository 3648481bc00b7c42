//! Exact rational scalars and small helpers around them.
//!
//! `Rat` is arbitrary precision and always stored reduced with a positive
//! denominator, so equality is plain structural equality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator, `den != 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p", "p/q", or "-p/q".
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let t = text.trim();
    let mk = |s: &str| s.parse::<BigInt>().map_err(|_| bad(text));
    match t.split_once('/') {
        None => Ok(Rat::from_integer(mk(t)?)),
        Some((p, q)) => {
            let den = mk(q)?;
            if den.is_zero() {
                return Err(bad(text));
            }
            Ok(Rat::new(mk(p)?, den))
        }
    }
}

fn bad(text: &str) -> Error {
    Error::Parse(format!("invalid rational literal `{text}`"))
}

/// Factorial as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigUint::one();
    for k in 2..=u64::from(n) {
        acc *= k;
    }
    BigInt::from(acc)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rat]) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc.abs()
}

/// True iff `v` is an integer.
pub fn is_integer(v: &Rat) -> bool {
    v.denom().is_one()
}

/// True iff `v` is a strictly positive integer.
pub fn is_positive_integer(v: &Rat) -> bool {
    is_integer(v) && v.numer().is_positive()
}

/// Serde adapters writing rationals as `"p/q"` strings (integers as `"p"`).
pub mod rat_string {
    use super::{parse_rat, Rat};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let raw = RawRat::deserialize(de)?;
        raw.into_rat().map_err(D::Error::custom)
    }

    /// Accepts either a JSON string `"p/q"` or a plain integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum RawRat {
        Int(i64),
        Text(String),
    }

    impl RawRat {
        pub fn into_rat(self) -> Result<Rat, String> {
            match self {
                RawRat::Int(n) => Ok(super::rat(n)),
                RawRat::Text(t) => parse_rat(&t).map_err(|e| e.to_string()),
            }
        }
    }
}

/// Rational wrapper serializing as a `"p/q"` string, composable inside
/// `Option` and `Vec` report fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Q(pub Rat);

impl serde::Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.0.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = rat_string::RawRat::deserialize(de)?;
        raw.into_rat().map(Q).map_err(D::Error::custom)
    }
}

pub fn to_q(values: &[Rat]) -> Vec<Q> {
    values.iter().cloned().map(Q).collect()
}

/// Integer wrapper serializing as a decimal string (sizes can exceed u64).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Z(pub BigInt);

impl serde::Serialize for Z {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.0.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Z {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum RawInt {
            Int(i64),
            Text(String),
        }
        match RawInt::deserialize(de)? {
            RawInt::Int(n) => Ok(Z(BigInt::from(n))),
            RawInt::Text(t) => t
                .trim()
                .parse::<BigInt>()
                .map(Z)
                .map_err(|_| D::Error::custom(format!("invalid integer literal `{t}`"))),
        }
    }
}

pub fn to_z(values: &[BigInt]) -> Vec<Z> {
    values.iter().cloned().map(Z).collect()
}

/// Serde adapters for `Vec<Rat>` in the `"p/q"` string convention.
pub mod rat_vec_string {
    use super::rat_string::RawRat;
    use super::Rat;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<RawRat>::deserialize(de)?;
        raw.into_iter()
            .map(|r| r.into_rat().map_err(D::Error::custom))
            .collect()
    }
}
