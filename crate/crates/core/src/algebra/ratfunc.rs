use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::poly::upoly::{self, UPoly};
use super::poly::ParamPoly;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Rational function in `q` and `s` kept in canonical form: numerator and
/// denominator coprime, denominator's leading coefficient equal to one
/// (leading in the order that compares the `s`-degree first). Structural
/// equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamRatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRatFunc {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("rational function with zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Self { num: p, den: ParamPoly::one() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn q() -> Self {
        Self::from_poly(ParamPoly::q())
    }

    pub fn s() -> Self {
        Self::from_poly(ParamPoly::s())
    }

    /// `s^e` for any signed exponent.
    pub fn s_pow(e: i64) -> Self {
        let m = ParamPoly::s_pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            Self { num: ParamPoly::one(), den: m }
        }
    }

    /// `q^e` for any signed exponent.
    pub fn q_pow(e: i64) -> Self {
        let m = ParamPoly::q_pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            Self { num: ParamPoly::one(), den: m }
        }
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        self.as_poly().and_then(ParamPoly::as_constant)
    }

    /// Exact value at `(q, s)`; a pole error when the denominator vanishes.
    pub fn evaluate(&self, q: &ExactScalar, s: &ExactScalar) -> Result<ExactScalar> {
        let d = self.den.evaluate(q, s);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes at q={q}, s={s}", self.den)));
        }
        self.num.evaluate(q, s).try_div(&d)
    }

    /// Re-canonicalizes; already-canonical input comes back unchanged.
    pub fn normalized(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    fn canonical(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lead = den.leading().expect("nonzero denominator").1.clone();
        if lead.is_one() {
            Self { num, den }
        } else {
            let inv = lead.try_inv().expect("nonzero leading coefficient");
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

/// Greatest common divisor in `Q[q, s]`, normalized to leading coefficient one.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_monomial() || b.is_monomial() {
        return monomial_gcd(a, b);
    }
    let sa = a.to_s_slices();
    let sb = b.to_s_slices();
    let ca = content(&sa);
    let cb = content(&sb);
    let cg = upoly::gcd(&ca, &cb);
    let mut x = primitive_with(&sa, &ca);
    let mut y = primitive_with(&sb, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // y has no s; its primitive part is a unit
            x = vec![vec![ExactScalar::one()]];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_with(&r, &content(&r)) };
    }
    let g: Vec<UPoly> = x.iter().map(|c| upoly::mul(c, &cg)).collect();
    monic(&ParamPoly::from_s_slices(&g))
}

fn monic(p: &ParamPoly) -> ParamPoly {
    match p.leading() {
        Some((_, c)) => p.scale(&c.try_inv().expect("nonzero")),
        None => ParamPoly::zero(),
    }
}

fn monomial_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let min_deg = |p: &ParamPoly| {
        p.terms().fold((u32::MAX, u32::MAX), |(mq, ms), (m, _)| (mq.min(m.0), ms.min(m.1)))
    };
    let (aq, as_) = min_deg(a);
    let (bq, bs) = min_deg(b);
    ParamPoly::monomial(aq.min(bq), as_.min(bs), ExactScalar::one())
}

fn content(slices: &[UPoly]) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in slices {
        if upoly::is_zero(c) {
            continue;
        }
        g = if g.is_empty() { upoly::monic(c) } else { upoly::gcd(&g, c) };
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn primitive_with(slices: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    slices
        .iter()
        .map(|s| if upoly::is_zero(s) { Vec::new() } else { upoly::div_exact(s, c) })
        .collect()
}

fn trim_slices(p: &mut Vec<UPoly>) {
    while p.last().is_some_and(upoly::is_zero) {
        p.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `s` over `Q[q]`.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r: Vec<UPoly> = a.to_vec();
    trim_slices(&mut r);
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c = upoly::mul(c, &lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = upoly::mul(&lr, bc);
            r[shift + i] = upoly::sub(&r[shift + i], &t);
        }
        trim_slices(&mut r);
    }
    r
}

impl Zero for ParamRatFunc {
    fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamRatFunc {
    fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }
}

impl From<ParamPoly> for ParamRatFunc {
    fn from(p: ParamPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<ExactScalar> for ParamRatFunc {
    fn from(c: ExactScalar) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamRatFunc {
    fn from(c: i64) -> Self {
        Self::constant(c.into())
    }
}

impl<'a> Add<&'a ParamRatFunc> for ParamRatFunc {
    type Output = ParamRatFunc;
    fn add(self, rhs: &'a ParamRatFunc) -> ParamRatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Self::canonical(self.num + &rhs.num, self.den);
        }
        let num = &self.num * &rhs.den + &(&rhs.num * &self.den);
        Self::canonical(num, &self.den * &rhs.den)
    }
}

impl Add for ParamRatFunc {
    type Output = ParamRatFunc;
    fn add(self, rhs: ParamRatFunc) -> ParamRatFunc {
        self + &rhs
    }
}

impl<'a> Sub<&'a ParamRatFunc> for ParamRatFunc {
    type Output = ParamRatFunc;
    fn sub(self, rhs: &'a ParamRatFunc) -> ParamRatFunc {
        self + &(-rhs.clone())
    }
}

impl Sub for ParamRatFunc {
    type Output = ParamRatFunc;
    fn sub(self, rhs: ParamRatFunc) -> ParamRatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamRatFunc> for ParamRatFunc {
    type Output = ParamRatFunc;
    fn mul(self, rhs: &'a ParamRatFunc) -> ParamRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(self.num * &rhs.num);
        }
        Self::canonical(self.num * &rhs.num, self.den * &rhs.den)
    }
}

impl Mul for ParamRatFunc {
    type Output = ParamRatFunc;
    fn mul(self, rhs: ParamRatFunc) -> ParamRatFunc {
        self * &rhs
    }
}

impl Neg for ParamRatFunc {
    type Output = ParamRatFunc;
    fn neg(self) -> ParamRatFunc {
        Self { num: -self.num, den: self.den }
    }
}

impl Ring for ParamRatFunc {
    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Self {
        Self::constant(ExactScalar::from_integer(v.clone()))
    }
}

impl Field for ParamRatFunc {
    fn try_inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Pole("inverse of the zero rational function".into()));
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for ParamRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ParamRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamRatFunc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: ParamPoly,
    den: ParamPoly,
}

impl Serialize for ParamRatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.clone(), den: self.den.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamRatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(deserializer)?;
        Self::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
