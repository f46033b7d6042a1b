use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, Ring};
use super::poly::ParamPoly;
use super::scalar::ExactScalar;
use crate::error::Result;

/// `(a; q)_k = (1 - a)(1 - aq)...(1 - aq^{k-1})`.
///
/// For `k < 0` the symbol is treated as infinite, so `None` is returned and
/// any reciprocal of it is zero (see [`q_pochhammer_recip`]).
pub fn q_pochhammer<R: Ring>(a: &R, q: &R, k: i64) -> Option<R> {
    if k < 0 {
        return None;
    }
    let mut acc = R::one();
    let mut term = a.clone();
    for i in 0..k {
        acc = acc * &(R::one() - &term);
        if i + 1 < k {
            term = term * q;
        }
    }
    Some(acc)
}

/// `1 / (a; q)_k`, zero for negative `k`; a pole error if a factor vanishes.
pub fn q_pochhammer_recip<F: Field>(a: &F, q: &F, k: i64) -> Result<F> {
    match q_pochhammer(a, q, k) {
        None => Ok(F::zero()),
        Some(p) => p.try_inv(),
    }
}

/// Integer coefficients of the Gaussian binomial `[a choose b]_q`, lowest
/// degree first. Empty (the zero polynomial) unless `0 <= b <= a`.
pub fn q_binomial_coeffs(a: i64, b: i64) -> Vec<BigInt> {
    if b < 0 || a < 0 || b > a {
        return Vec::new();
    }
    let b = b.min(a - b) as usize;
    let a = a as usize;
    // row[j] holds [i choose j] while sweeping i = 0..=a
    let mut row: Vec<Vec<BigInt>> = vec![Vec::new(); b + 1];
    row[0] = vec![BigInt::one()];
    for i in 1..=a {
        for j in (1..=b.min(i)).rev() {
            // [i, j] = [i-1, j-1] + q^j [i-1, j]
            let prev_same = std::mem::take(&mut row[j]);
            let prev_lower = &row[j - 1];
            let shifted = if prev_same.is_empty() { 0 } else { prev_same.len() + j };
            let len = prev_lower.len().max(shifted);
            let mut next = vec![BigInt::zero(); len];
            for (d, c) in prev_lower.iter().enumerate() {
                next[d] += c;
            }
            for (d, c) in prev_same.iter().enumerate() {
                next[d + j] += c;
            }
            row[j] = next;
        }
    }
    std::mem::take(&mut row[b])
}

/// Gaussian binomial as a polynomial in `q`.
pub fn q_binomial(a: i64, b: i64) -> ParamPoly {
    ParamPoly::from_terms(
        q_binomial_coeffs(a, b)
            .into_iter()
            .enumerate()
            .map(|(d, c)| (d as u32, 0, ExactScalar::from_integer(c))),
    )
}

/// Gaussian binomial evaluated in any ring via Horner's rule.
pub fn q_binomial_value<R: Ring>(a: i64, b: i64, q: &R) -> R {
    let coeffs = q_binomial_coeffs(a, b);
    let mut acc = R::zero();
    for c in coeffs.iter().rev() {
        acc = acc * q + &R::from_bigint(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(a: i64, b: i64) -> Vec<i64> {
        q_binomial_coeffs(a, b).iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_binomials() {
        assert_eq!(coeffs(3, 0), vec![1]);
        assert_eq!(coeffs(2, 1), vec![1, 1]);
        assert_eq!(coeffs(4, 2), vec![1, 1, 2, 1, 1]);
        assert!(coeffs(1, 2).is_empty());
        assert!(coeffs(3, -1).is_empty());
    }

    #[test]
    fn pochhammer_basics() {
        let q = ExactScalar::ratio(1, 3);
        let a = ExactScalar::from(5);
        assert_eq!(q_pochhammer(&a, &q, 0), Some(ExactScalar::one()));
        assert_eq!(q_pochhammer(&ExactScalar::zero(), &q, 5), Some(ExactScalar::one()));
        let expect = (ExactScalar::one() - &q) * &(ExactScalar::one() - &(q.clone() * &q));
        assert_eq!(q_pochhammer(&q, &q, 2), Some(expect));
        assert_eq!(q_pochhammer_recip(&a, &q, -1).unwrap(), ExactScalar::zero());
        assert!(q_pochhammer_recip(&ExactScalar::one(), &q, 1).is_err());
    }

    #[test]
    fn symbolic_pochhammer() {
        let q = ParamPoly::q();
        let p = q_pochhammer(&q, &q, 2).unwrap();
        assert_eq!(p, ParamPoly::from_q_coeffs([1, -1, -1, 1]));
    }

    #[test]
    fn horner_matches_polynomial() {
        let q = ExactScalar::ratio(-2, 7);
        let v = q_binomial_value(6, 3, &q);
        assert_eq!(v, q_binomial(6, 3).evaluate(&q, &ExactScalar::zero()));
    }
}
