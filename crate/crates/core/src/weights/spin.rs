use crate::algebra::Field;
use crate::error::{Error, Result};

/// Weight of the spin Hall-Littlewood lattice: vertical labels `a` (bottom)
/// and `c` (top) are 0 or 1, horizontal labels are multiplicities `m` (left)
/// and `d` (right).
pub fn spin_hl_weight<F: Field>(a: u32, m: u32, c: u32, d: u32, x: &F, s: &F, q: &F) -> Result<F> {
    if a > 1 || c > 1 || a + m != c + d {
        return Ok(F::zero());
    }
    let den = x.clone() - s;
    if den.is_zero() {
        return Err(Error::Pole("spin Hall-Littlewood weight at x = s".into()));
    }
    let qm = q.pow(m);
    let num = match (a, c) {
        (1, 1) => F::one() - &(qm * x * s),
        (0, 1) => F::one() - &qm,
        (1, 0) => (F::one() - &(qm * s * s)) * x,
        _ => x.clone() - &(qm * s),
    };
    num.try_div(&den)
}

/// Weight of Borodin's lattice: horizontal labels `b` (left) and `d` (right)
/// are 0 or 1, the bottom label is the multiplicity `m` and the top label is
/// `m + b - d`.
pub fn borodin_weight<F: Field>(b: u32, m: u32, d: u32, x: &F, s: &F, q: &F) -> Result<F> {
    if b > 1 || d > 1 || m + b < d {
        return Ok(F::zero());
    }
    let den = F::one() - &(s.clone() * x);
    if den.is_zero() {
        return Err(Error::Pole("Borodin weight at s x = 1".into()));
    }
    let c = m + b - d;
    let num = match (b, d) {
        (0, 0) => F::one() - &(s.clone() * x * &q.pow(m)),
        (0, 1) => (F::one() - &(s.clone() * s * &q.pow(c))) * x,
        (1, 0) => F::one() - &q.pow(c),
        _ => x.clone() - &(s.clone() * &q.pow(m)),
    };
    num.try_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactScalar;
    use num_traits::Zero;

    #[test]
    fn tabulated_values() {
        let (x, s, q) = (ExactScalar::from(2), ExactScalar::from(5), ExactScalar::from(3));
        // (1 - q)/(x - s) = 2/3
        assert_eq!(spin_hl_weight(0, 1, 1, 0, &x, &s, &q).unwrap(), ExactScalar::ratio(2, 3));
        assert!(spin_hl_weight(0, 0, 1, 0, &x, &s, &q).unwrap().is_zero());
        assert!(spin_hl_weight(0, 0, 1, 1, &x, &s, &q).unwrap().is_zero());
        assert!(spin_hl_weight(1, 0, 1, 0, &s, &s, &q).is_err());
        assert!(borodin_weight(0, 0, 1, &x, &s, &q).unwrap().is_zero());
        // (x - s q^m)/(1 - s x) with m = 2
        assert_eq!(borodin_weight(1, 2, 1, &x, &s, &q).unwrap(), ExactScalar::ratio(2 - 45, 1 - 10));
    }
}
