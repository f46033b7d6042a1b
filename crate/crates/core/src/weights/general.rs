//! The rank-`r` weights `W_{L,M}` and their building block `Φ`.

use crate::algebra::{q_binomial_value, q_pochhammer, Field};
use crate::error::{Error, Result};

use super::label::{EdgeLabel, Spin, SpinParams, TileState};

/// `Φ(λ, μ; x, y)` for `r`-tuples `0 <= λ <= μ`.
pub fn phi<F: Field>(lam: &[u32], mu: &[u32], x: &F, y: &F, q: &F) -> Result<F> {
    if lam.len() != mu.len() {
        return Err(Error::Domain(format!("phi: rank mismatch {lam:?} vs {mu:?}")));
    }
    if lam.iter().zip(mu).any(|(l, m)| l > m) {
        return Err(Error::Domain(format!("phi: need lambda <= mu, got {lam:?} > {mu:?}")));
    }
    let size_lam: u32 = lam.iter().sum();
    let size_mu: u32 = mu.iter().sum();
    let poch = |a: &F, k: u32| q_pochhammer(a, q, i64::from(k)).expect("nonnegative index");

    let denom = poch(y, size_mu);
    if denom.is_zero() {
        return Err(Error::Pole(format!("phi: (y;q)_{size_mu} vanishes")));
    }
    let ratio = if size_mu > 0 || size_lam > 0 { y.try_div(x)? } else { F::one() };
    let mut val = poch(x, size_lam) * &poch(&ratio, size_mu - size_lam) * &denom.try_inv()?;
    val = val * &ratio.pow(size_lam);

    let mut e = 0u32;
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            e += (mu[i] - lam[i]) * lam[j];
        }
    }
    val = val * &q.pow(e);
    for (l, m) in lam.iter().zip(mu) {
        val = val * &q_binomial_value(i64::from(*m), i64::from(*l), q);
    }
    Ok(val)
}

fn spin_power<F: Field>(spin: Spin, q: &F, s: &F) -> Result<F> {
    match spin {
        Spin::Integer(n) => Ok(q.pow(n)),
        Spin::SquareS => (s.clone() * s).try_inv(),
    }
}

fn exceeds(label: &EdgeLabel, spin: Spin) -> bool {
    spin.bound().is_some_and(|cap| label.total() > cap)
}

/// `W_{L,M}(x; q; A, B, C, D)` with `A` bottom, `B` left, `C` top, `D` right.
///
/// Horizontal edges (`B`, `D`) have capacity `L`, vertical edges (`A`, `C`)
/// capacity `M`. `s` is only read for [`Spin::SquareS`] capacities.
pub fn general_weight<F: Field>(params: &SpinParams, x: &F, q: &F, s: &F, tile: &TileState) -> Result<F> {
    tile.require_rank(params.r)?;
    if !tile.conserves() {
        return Ok(F::zero());
    }
    let TileState { a, b, c, d } = tile;
    if exceeds(a, params.m) || exceeds(c, params.m) || exceeds(b, params.l) || exceeds(d, params.l) {
        return Ok(F::zero());
    }
    let ql = spin_power(params.l, q, s)?;
    let qm = spin_power(params.m, q, s)?;
    let ql_inv = ql.try_inv()?;
    let qm_inv = qm.try_inv()?;

    let pre = x.powi(i64::from(d.total()) - i64::from(b.total()))?
        * &ql.pow(a.total())
        * &qm_inv.pow(d.total());

    let x1 = ql.clone() * &qm_inv * x;
    let y1 = qm_inv * x;
    let x2 = (ql.clone() * x).try_inv()?;
    let y2 = ql_inv;

    let r = params.r;
    let bounds: Vec<u32> = (0..r).map(|i| b.get(i).min(c.get(i))).collect();
    let mut p = vec![0u32; r];
    let mut total = F::zero();
    loop {
        let cp: Vec<u32> = (0..r).map(|i| c.get(i) - p[i]).collect();
        let cdp: Vec<u32> = (0..r).map(|i| c.get(i) + d.get(i) - p[i]).collect();
        let t1 = phi(&cp, &cdp, &x1, &y1, q)?;
        if !t1.is_zero() {
            total = total + t1 * &phi(&p, b.counts(), &x2, &y2, q)?;
        }
        // odometer over 0 <= p_i <= bounds_i
        let mut i = 0;
        loop {
            if i == r {
                return Ok(pre * &total);
            }
            if p[i] < bounds[i] {
                p[i] += 1;
                break;
            }
            p[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactScalar;
    use num_traits::{One, Zero};

    fn r(p: i64, q: i64) -> ExactScalar {
        ExactScalar::ratio(p, q)
    }

    #[test]
    fn phi_small_cases() {
        let (x, y, q) = (r(2, 3), r(-5, 7), r(1, 3));
        let one = ExactScalar::one();
        assert_eq!(phi(&[0], &[0], &x, &y, &q).unwrap(), one);
        let expect = (one.clone() - &(y.clone() * &x.try_inv().unwrap())) * &(one.clone() - &y).try_inv().unwrap();
        assert_eq!(phi(&[0], &[1], &x, &y, &q).unwrap(), expect);
        let expect = (one.clone() - &x) * &y.try_div(&x).unwrap() * &(one.clone() - &y).try_inv().unwrap();
        assert_eq!(phi(&[1], &[1], &x, &y, &q).unwrap(), expect);
        assert!(matches!(phi(&[2], &[1], &x, &y, &q), Err(Error::Domain(_))));
        assert!(matches!(phi(&[0], &[1], &x, &one, &q), Err(Error::Pole(_))));
    }

    #[test]
    fn non_conserving_is_zero() {
        let p = SpinParams::integer(2, 2, 1).unwrap();
        let t = TileState::new(1, 1, 0, 1);
        let v = general_weight(&p, &r(3, 5), &r(1, 7), &r(0, 1), &t).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn over_capacity_is_zero() {
        let p = SpinParams::integer(1, 1, 1).unwrap();
        let t = TileState::new(2, 0, 1, 1);
        let v = general_weight(&p, &r(3, 5), &r(1, 7), &r(0, 1), &t).unwrap();
        assert!(v.is_zero());
    }
}
