use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::scalar::ExactScalar;
use crate::error::Result;

/// Exponent pair `(deg_q, deg_s)`.
pub type Monomial = (u32, u32);

/// Polynomial in `q` and `s` with exact rational coefficients.
///
/// Terms with zero coefficient are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl ParamPoly {
    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(dq: u32, ds: u32, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, ds), c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, ExactScalar::one())
    }

    pub fn s() -> Self {
        Self::monomial(0, 1, ExactScalar::one())
    }

    pub fn q_pow(e: u32) -> Self {
        Self::monomial(e, 0, ExactScalar::one())
    }

    pub fn s_pow(e: u32) -> Self {
        Self::monomial(0, e, ExactScalar::one())
    }

    /// Builds from `(dq, ds, coeff)` triples, merging repeats.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, ExactScalar)>,
    {
        let mut p = Self::zero();
        for (dq, ds, c) in it {
            p.add_term((dq, ds), c);
        }
        p
    }

    /// Univariate polynomial in `q` from coefficients `c_0, c_1, ...`.
    pub fn from_q_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i as u32, 0, ExactScalar::from(c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dq: u32, ds: u32) -> ExactScalar {
        self.terms.get(&(dq, ds)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term in the order comparing `deg_s` first, then `deg_q`.
    pub fn leading(&self) -> Option<(Monomial, &ExactScalar)> {
        self.terms
            .iter()
            .max_by_key(|(m, _)| (m.1, m.0))
            .map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn shift(&self, dq: u32, ds: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| ((m.0 + dq, m.1 + ds), v.clone()))
                .collect(),
        }
    }

    /// Evaluates at a point of any ring containing the rationals' images.
    pub fn eval_in<R: Ring>(&self, q: &R, s: &R, embed: impl Fn(&ExactScalar) -> R) -> R {
        let mut acc = R::zero();
        for (&(dq, ds), c) in &self.terms {
            acc = acc + embed(c) * q.pow(dq) * s.pow(ds);
        }
        acc
    }

    pub fn evaluate(&self, q: &ExactScalar, s: &ExactScalar) -> ExactScalar {
        self.eval_in(q, s, Clone::clone)
    }

    /// Exact quotient `self / rhs`, or `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let ((lq, ls), lc) = rhs.leading()?;
        let lc_inv = lc.try_inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rq, rs), rc)) = rem.leading() {
            if rq < lq || rs < ls {
                return None;
            }
            let c = rc * &lc_inv;
            let t = Self::monomial(rq - lq, rs - ls, c);
            rem = rem - &(rhs.clone() * &t);
            quot = quot + t;
        }
        Some(quot)
    }

    /// Coefficients in `q` when the polynomial does not involve `s`.
    pub fn q_coefficients(&self) -> Option<Vec<ExactScalar>> {
        if self.terms.keys().any(|m| m.1 != 0) {
            return None;
        }
        let deg = self.degree_q().unwrap_or(0) as usize;
        let mut out = vec![ExactScalar::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.0 as usize] = c.clone();
        }
        Some(out)
    }

    /// Splits into `s`-degree slices, each a dense univariate polynomial in `q`.
    pub(crate) fn to_s_slices(&self) -> Vec<Vec<ExactScalar>> {
        let ds = match self.degree_s() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Vec::new(); ds + 1];
        for (&(dq, d), c) in &self.terms {
            let row: &mut Vec<ExactScalar> = &mut out[d as usize];
            if row.len() <= dq as usize {
                row.resize(dq as usize + 1, ExactScalar::zero());
            }
            row[dq as usize] = c.clone();
        }
        out
    }

    pub(crate) fn from_s_slices(slices: &[Vec<ExactScalar>]) -> Self {
        let mut p = Self::zero();
        for (ds, row) in slices.iter().enumerate() {
            for (dq, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert((dq as u32, ds as u32), c.clone());
                }
            }
        }
        p
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        Self::constant(ExactScalar::one())
    }
}

impl From<ExactScalar> for ParamPoly {
    fn from(c: ExactScalar) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        Self::constant(c.into())
    }
}

impl<'a> Add<&'a ParamPoly> for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: &'a ParamPoly) -> ParamPoly {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
        self
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        if self.terms.len() < rhs.terms.len() {
            rhs + &self
        } else {
            self + &rhs
        }
    }
}

impl<'a> Sub<&'a ParamPoly> for ParamPoly {
    type Output = ParamPoly;
    fn sub(mut self, rhs: &'a ParamPoly) -> ParamPoly {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
        self
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        self - &rhs
    }
}

impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term((ma.0 + mb.0, ma.1 + mb.1), ca * cb);
            }
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        &self * rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Ring for ParamPoly {
    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Self {
        Self::constant(ExactScalar::from_integer(v.clone()))
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dq, ds), c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !abs.is_one() || (dq == 0 && ds == 0) {
                factors.push(abs.to_string());
            }
            for (name, e) in [("q", dq), ("s", ds)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(dq, ds), c) in &self.terms {
            seq.serialize_element(&(dq, ds, c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u32, u32, ExactScalar)> = Vec::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        for (dq, ds, _) in &raw {
            if !seen.insert((*dq, *ds)) {
                return Err(D::Error::custom(format!("repeated monomial q^{dq} s^{ds}")));
            }
        }
        Ok(Self::from_terms(raw))
    }
}

/// Dense univariate polynomials over the rationals, lowest degree first.
pub(crate) mod upoly {
    use super::*;

    pub type UPoly = Vec<ExactScalar>;

    pub fn trim(p: &mut UPoly) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn is_zero(p: &UPoly) -> bool {
        p.iter().all(Zero::is_zero)
    }

    pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![ExactScalar::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            let y = b.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            out.push(x - y);
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &UPoly, c: &ExactScalar) -> UPoly {
        let mut out: UPoly = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder over the rationals.
    pub fn divrem(a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let mut r = a.clone();
        trim(&mut r);
        let mut bb = b.clone();
        trim(&mut bb);
        let lead_inv = bb
            .last()
            .ok_or_else(|| crate::error::Error::Pole("division by zero polynomial".into()))?
            .try_inv()?;
        if r.len() < bb.len() {
            return Ok((Vec::new(), r));
        }
        let mut qt = vec![ExactScalar::zero(); r.len() - bb.len() + 1];
        while r.len() >= bb.len() && !r.is_empty() {
            let shift = r.len() - bb.len();
            let c = r.last().expect("nonempty") * &lead_inv;
            for (i, y) in bb.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * y);
            }
            qt[shift] = c;
            trim(&mut r);
        }
        trim(&mut qt);
        Ok((qt, r))
    }

    pub fn monic(a: &UPoly) -> UPoly {
        match a.last() {
            Some(l) => {
                let inv = l.try_inv().expect("trimmed polynomial has nonzero lead");
                scale(a, &inv)
            }
            None => Vec::new(),
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        monic(&x)
    }

    pub fn div_exact(a: &UPoly, b: &UPoly) -> UPoly {
        let (q, r) = divrem(a, b).expect("nonzero divisor");
        debug_assert!(r.is_empty());
        q
    }
}
