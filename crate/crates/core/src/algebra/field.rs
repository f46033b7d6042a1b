use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Result;

/// Commutative ring with exact equality.
///
/// Everything the lattice engine multiplies and sums implements this: exact
/// rationals, polynomials in `(q, s)` and rational functions in `(q, s)`.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + 'static
{
    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &num_bigint::BigInt) -> Self;

    fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; a pole error for zero.
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.try_inv()?)
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    fn powi(&self, exp: i64) -> Result<Self> {
        let p = self.pow(exp.unsigned_abs() as u32);
        if exp < 0 {
            p.try_inv()
        } else {
            Ok(p)
        }
    }
}
