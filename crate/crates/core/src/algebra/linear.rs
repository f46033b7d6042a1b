use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Solves `A X = B` exactly for a possibly overdetermined `A` (`rows >= cols`)
/// and several right-hand sides at once. `b[i]` is row `i` of `B`.
///
/// Rows are cleared of denominators and reduced by fraction-free (Bareiss)
/// elimination, so no intermediate gcds are taken.
///
/// Fails with [`Error::Singular`] when `A` has rank below its column count and
/// with [`Error::Inconsistent`] when some column of `B` is not in the range of `A`.
pub fn solve_exact(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Result<Vec<Vec<ExactScalar>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let nrhs = b.first().map_or(0, Vec::len);
    if b.len() != rows || a.iter().any(|r| r.len() != cols) || b.iter().any(|r| r.len() != nrhs) {
        return Err(Error::Invariant("ragged linear system".into()));
    }
    if rows < cols {
        return Err(Error::Singular(format!("{rows} equations for {cols} unknowns")));
    }
    let width = cols + nrhs;
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let row: Vec<&ExactScalar> = ra.iter().chain(rb).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..cols {
        let pivot = (k..rows)
            .find(|&r| !m[r][k].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
        m.swap(k, pivot);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[k]);
            for j in k + 1..width {
                let v = &pivot_row[k] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    for (r, row) in m.iter().enumerate().skip(cols) {
        if row[cols..].iter().any(|v| !v.is_zero()) {
            return Err(Error::Inconsistent(format!("equation {r} is not satisfied")));
        }
    }

    // Back substitution on the triangular part; `det * x` is integral.
    let det = prev;
    let mut scaled: Vec<Vec<BigInt>> = vec![Vec::new(); cols];
    for i in (0..cols).rev() {
        let row = &m[i];
        scaled[i] = (0..nrhs)
            .map(|c| {
                let mut acc = &det * &row[cols + c];
                for j in i + 1..cols {
                    acc -= &row[j] * &scaled[j][c];
                }
                acc / &row[i]
            })
            .collect();
    }
    scaled
        .into_iter()
        .map(|r| r.into_iter().map(|v| ExactScalar::new(v, det.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<ExactScalar> {
        x.iter().map(|&c| ExactScalar::from(c)).collect()
    }

    #[test]
    fn overdetermined_consistent() {
        let a = vec![v(&[1, 1]), v(&[1, -1]), v(&[2, 1])];
        let b = vec![v(&[3]), v(&[1]), v(&[5])];
        assert_eq!(solve_exact(&a, &b).unwrap(), vec![v(&[2]), v(&[1])]);
    }

    #[test]
    fn failures_are_classified() {
        let a = vec![v(&[1, 2]), v(&[2, 4])];
        assert!(matches!(solve_exact(&a, &[v(&[1]), v(&[2])]), Err(Error::Singular(_))));
        let a = vec![v(&[1]), v(&[1])];
        assert!(matches!(solve_exact(&a, &[v(&[1]), v(&[2])]), Err(Error::Inconsistent(_))));
    }
}
