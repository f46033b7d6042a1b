use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::Pole("rational with zero denominator".into()));
        }
        Ok(Self(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    /// `p/q` for small machine integers. Panics on a zero denominator.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(p, q).expect("nonzero denominator")
    }

    pub fn from_big(r: BigRational) -> Self {
        Self(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        self.try_inv()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `p/q` or a plain integer, with optional sign on `p`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let parse_int = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))
        };
        match t.split_once('/') {
            Some((p, q)) => Self::new(parse_int(p)?, parse_int(q)?)
                .map_err(|_| Error::Parse(format!("zero denominator in {text:?}"))),
            None => Ok(Self::from_integer(parse_int(t)?)),
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'b ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Self(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self(BigRational::one())
    }
}

impl Ring for ExactScalar {
    fn from_i64(v: i64) -> Self {
        Self::from_integer(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::from_integer(v.clone())
    }

    fn pow(&self, exp: u32) -> Self {
        Self(num_traits::Pow::pow(&self.0, exp))
    }
}

impl Field for ExactScalar {
    fn try_inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::Pole("division by zero".into()))
        } else {
            Ok(Self(self.0.recip()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let r: ExactScalar = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("12".parse::<ExactScalar>().unwrap().to_string(), "12");
        assert_eq!(" -7 / 21 ".parse::<ExactScalar>().unwrap(), ExactScalar::ratio(-1, 3));
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = ExactScalar::new(10, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn inverse_of_zero_is_a_pole() {
        assert!(matches!(ExactScalar::zero().try_inv(), Err(Error::Pole(_))));
        assert_eq!(ExactScalar::ratio(2, 3).powi(-2).unwrap(), ExactScalar::ratio(9, 4));
    }

    #[test]
    fn serde_uses_strings() {
        let r = ExactScalar::ratio(-3, 7);
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, "\"-3/7\"");
        let back: ExactScalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
