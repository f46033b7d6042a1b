use crate::algebra::Field;
use crate::error::{Error, Result};

/// Six-vertex weight with column rapidity `x` and row rapidity `y`; labels
/// are bottom `a`, left `b`, top `c`, right `d`, each 0 or 1.
///
/// With `t = x/y`:
///
/// | tile          | weight                  |
/// |---------------|-------------------------|
/// | all 0, all 1  | 1                       |
/// | (1,0,1,0)     | (1 - t/q)/(1 - t)       |
/// | (0,1,0,1)     | q(1 - t/q)/(1 - t)      |
/// | (1,0,0,1)     | (1 - q)(t/q)/(1 - t)    |
/// | (0,1,1,0)     | (1 - q)/(1 - t)         |
///
/// Anything else is 0.
pub fn six_vertex_weight<F: Field>(a: u32, b: u32, c: u32, d: u32, x: &F, y: &F, q: &F) -> Result<F> {
    if a > 1 || b > 1 || c > 1 || d > 1 || a + b != c + d {
        return Ok(F::zero());
    }
    if a == b {
        return Ok(F::one());
    }
    let t = x.try_div(y)?;
    let one_minus_t = F::one() - &t;
    if one_minus_t.is_zero() {
        return Err(Error::Pole("six-vertex weight at x = y".into()));
    }
    let inv = one_minus_t.try_inv()?;
    let t_over_q = t.try_div(q)?;
    Ok(match (a, c) {
        (1, 1) => (F::one() - &t_over_q) * &inv,
        (0, 0) => q.clone() * &(F::one() - &t_over_q) * &inv,
        (1, 0) => (F::one() - q) * &t_over_q * &inv,
        _ => (F::one() - q) * &inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactScalar;

    #[test]
    fn table_entries() {
        let (x, y, q) = (ExactScalar::ratio(2, 3), ExactScalar::ratio(5, 7), ExactScalar::ratio(1, 4));
        let w = |a, b, c, d| six_vertex_weight(a, b, c, d, &x, &y, &q).unwrap();
        assert_eq!(w(1, 1, 1, 1), ExactScalar::from(1));
        assert_eq!(w(1, 0, 1, 1), ExactScalar::from(0));
        let t = x.try_div(&y).unwrap();
        let one = ExactScalar::from(1);
        assert_eq!(w(0, 1, 1, 0), (one.clone() - &q).try_div(&(one.clone() - &t)).unwrap());
        assert!(six_vertex_weight(1, 0, 1, 0, &x, &x, &q).is_err());
    }
}
