//! Lattice and symmetrization evaluations of the wave functions `H_{m/w}`,
//! the spin Hall-Littlewood functions `F_m` and Borodin's functions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactScalar, Field, Ring};
use crate::error::{Error, Result};
use crate::lattice::{
    outputs_binary_horizontal, outputs_binary_vertical, partition_function, BoundarySpec, GridSpec, Kernel,
};
use crate::sampling::{random_generic_q, random_rational};
use crate::weights::{borodin_weight, six_vertex_weight, spin_hl_weight, EdgeLabel, TileState};

/// Finite tuple of particle multiplicities; `parts[i]` sits at position `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self(parts)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `Σ m_i`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `|m| = Σ i m_i` with positions counted from one.
    pub fn weighted_size(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &m)| (i as i64 + 1) * i64::from(m)).sum()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&p| p <= 1)
    }

    /// Positions `i - 1` listed `m_i` times, in decreasing order.
    pub fn mu(&self) -> Vec<u32> {
        let mut mu: Vec<u32> = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i as u32, m as usize))
            .collect();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        mu
    }

    /// Extends with zeros to `len` parts; an error if nonzero parts would be cut.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if self.0.iter().skip(len).any(|&p| p != 0) {
            return Err(Error::Invariant(format!("cannot fit {self} into {len} parts")));
        }
        let mut v = self.0.clone();
        v.resize(len, 0);
        Ok(Self(v))
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> Self {
        let end = self.0.iter().rposition(|&p| p != 0).map_or(0, |i| i + 1);
        Self(self.0[..end].to_vec())
    }

    /// All compositions of `n` with exactly `len` parts, in decreasing
    /// lexicographic order.
    pub fn all_of_size(n: u32, len: usize) -> Vec<Self> {
        fn rec(n: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == len {
                cur.push(n);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for first in (0..=n).rev() {
                cur.push(first);
                rec(n - first, len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if n == 0 {
                out.push(Self(Vec::new()));
            }
            return out;
        }
        rec(n, len, &mut Vec::new(), &mut out);
        out
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u32; N]> for Composition {
    fn from(v: [u32; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated integers, or a run of single digits such as `01001`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Self(Vec::new()));
        }
        let bad = || Error::Parse(format!("not a composition: {text:?}"));
        if t.contains(',') {
            t.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>().map(Self)
        } else {
            t.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>().map(Self)
        }
    }
}

/// Sample point `(x_1, ..., x_n; q, s)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EvalPoint {
    pub xs: Vec<ExactScalar>,
    pub q: ExactScalar,
    pub s: ExactScalar,
}

impl EvalPoint {
    pub fn new(xs: Vec<ExactScalar>, q: ExactScalar, s: ExactScalar) -> Self {
        Self { xs, q, s }
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    /// Checks distinct nonzero `x`s, `x_i != s`, `s x_i != 1`, `q` not in {0, 1}.
    pub fn validate(&self) -> Result<()> {
        let one = ExactScalar::one();
        for (i, x) in self.xs.iter().enumerate() {
            if x.is_zero() || *x == self.s || (x.clone() * &self.s) == one {
                return Err(Error::Domain(format!("x_{} = {x} is a pole for s = {}", i + 1, self.s)));
            }
            if self.xs[..i].contains(x) {
                return Err(Error::Domain(format!("repeated variable {x}")));
            }
        }
        if self.q.is_zero() || self.q == one {
            return Err(Error::Domain(format!("q = {} is degenerate", self.q)));
        }
        Ok(())
    }

    /// Point with every `x_i` replaced by its reciprocal.
    pub fn inverted(&self) -> Result<Self> {
        Ok(Self {
            xs: self.xs.iter().map(Field::try_inv).collect::<Result<_>>()?,
            q: self.q.clone(),
            s: self.s.clone(),
        })
    }

    /// Random `xs` at fixed `(q, s)`, satisfying [`EvalPoint::validate`] and
    /// staying away from the poles `q^j s^2 = 1` of the puzzle weights.
    pub fn random_with<R: Rng>(rng: &mut R, n: usize, q: ExactScalar, s: ExactScalar) -> Self {
        loop {
            let xs: Vec<ExactScalar> = (0..n).map(|_| random_rational(rng)).collect();
            let p = Self::new(xs, q.clone(), s.clone());
            if p.validate().is_ok() && p.inverted().is_ok_and(|i| i.validate().is_ok()) {
                return p;
            }
        }
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let (q, s) = random_qs(rng);
        Self::random_with(rng, n, q, s)
    }
}

/// Random `(q, s)` with `q` not in `{0, ±1}` and `s^2 q^j != 1` for small `j`.
pub fn random_qs<R: Rng>(rng: &mut R) -> (ExactScalar, ExactScalar) {
    loop {
        let q = random_generic_q(rng);
        let s = random_rational(rng);
        let s2 = s.clone() * &s;
        let degenerate = (-12..=12).any(|j| (s2.clone() * &q.powi(j).expect("q nonzero")).is_one());
        if !degenerate {
            return (q, s);
        }
    }
}

/// Six-vertex kernel: column rapidities `xs`, row rapidities `ys`.
pub struct SixVertexKernel<'a> {
    pub xs: &'a [ExactScalar],
    pub ys: &'a [ExactScalar],
    pub q: &'a ExactScalar,
}

impl Kernel for SixVertexKernel<'_> {
    type Weight = ExactScalar;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        let total = a.get(0) + b.get(0);
        (0..=1u32)
            .filter(|&c| c <= total && total - c <= 1)
            .map(|c| (EdgeLabel::single(c), EdgeLabel::single(total - c)))
            .collect()
    }

    fn weight(&self, row: usize, col: usize, t: &TileState) -> Result<ExactScalar> {
        six_vertex_weight(t.a.get(0), t.b.get(0), t.c.get(0), t.d.get(0), &self.xs[col], &self.ys[row], self.q)
    }
}

/// Spin Hall-Littlewood kernel: one column per variable.
pub struct SpinHlKernel<'a> {
    pub point: &'a EvalPoint,
}

impl Kernel for SpinHlKernel<'_> {
    type Weight = ExactScalar;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        outputs_binary_vertical(a, b)
    }

    fn weight(&self, _row: usize, col: usize, t: &TileState) -> Result<ExactScalar> {
        let p = self.point;
        spin_hl_weight(t.a.get(0), t.b.get(0), t.c.get(0), t.d.get(0), &p.xs[col], &p.s, &p.q)
    }
}

/// Borodin kernel: one row per variable.
pub struct BorodinKernel<'a> {
    pub point: &'a EvalPoint,
}

impl Kernel for BorodinKernel<'_> {
    type Weight = ExactScalar;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        outputs_binary_horizontal(a, b)
    }

    fn weight(&self, row: usize, _col: usize, t: &TileState) -> Result<ExactScalar> {
        let p = self.point;
        let w = borodin_weight(t.b.get(0), t.a.get(0), t.d.get(0), &p.xs[row], &p.s, &p.q)?;
        // conservation is implied by the transition rule, but guard anyway
        Ok(if t.conserves() { w } else { ExactScalar::zero() })
    }
}

fn singles(v: impl IntoIterator<Item = u32>) -> Vec<EdgeLabel> {
    v.into_iter().map(EdgeLabel::single).collect()
}

/// `H_{m/w}` at column rapidities `xs` and row rapidities `ys`.
pub fn wavefunction_h(
    m: &Composition,
    w: &Composition,
    xs: &[ExactScalar],
    ys: &[ExactScalar],
    q: &ExactScalar,
) -> Result<ExactScalar> {
    if !m.is_binary() || !w.is_binary() {
        return Err(Error::Invariant("H needs 0/1 strings".into()));
    }
    if m.len() != w.len() {
        return Err(Error::Invariant(format!("m and w differ in length: {m} vs {w}")));
    }
    if ys.len() != m.len() {
        return Err(Error::Invariant(format!("need {} row rapidities, got {}", m.len(), ys.len())));
    }
    let n = xs.len();
    if m.size() as usize != w.size() as usize + n {
        return Err(Error::Invariant(format!(
            "count(m) = {} must equal count(w) + n = {} + {n}",
            m.size(),
            w.size()
        )));
    }
    if n == 0 {
        return Ok(if m == w { ExactScalar::one() } else { ExactScalar::zero() });
    }
    if m.is_empty() {
        return Ok(ExactScalar::zero());
    }
    let grid = GridSpec::new(m.len(), n)?;
    let boundary = BoundarySpec::fixed(
        singles(m.parts().iter().copied()),
        singles(w.parts().iter().copied()),
        singles(std::iter::repeat_n(0, n)),
        singles(std::iter::repeat_n(1, n)),
    );
    partition_function(&grid, &boundary, &SixVertexKernel { xs, ys, q })
}

/// `H_{m/w}` with every row rapidity set to `1/q`.
pub fn wavefunction_h_at(m: &Composition, w: &Composition, xs: &[ExactScalar], q: &ExactScalar) -> Result<ExactScalar> {
    let y = q.try_inv()?;
    wavefunction_h(m, w, xs, &vec![y; m.len()], q)
}

fn check_size(m: &Composition, point: &EvalPoint) -> Result<()> {
    if m.size() as usize != point.n() {
        return Err(Error::Invariant(format!(
            "size of {m} is {} but the point has {} variables",
            m.size(),
            point.n()
        )));
    }
    Ok(())
}

/// `F_m` from its lattice: `len(m)` rows, one column per variable.
pub fn spin_hl_f(m: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    check_size(m, point)?;
    let n = point.n();
    if n == 0 {
        return Ok(ExactScalar::one());
    }
    let grid = GridSpec::new(m.len(), n)?;
    let boundary = BoundarySpec::fixed(
        singles(m.parts().iter().copied()),
        singles(std::iter::repeat_n(0, m.len())),
        singles(std::iter::repeat_n(0, n)),
        singles(std::iter::repeat_n(1, n)),
    );
    partition_function(&grid, &boundary, &SpinHlKernel { point })
}

/// Borodin's function from its lattice: one row per variable (`x_1` on top),
/// `len(m)` columns.
pub fn borodin_f(m: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    check_size(m, point)?;
    let n = point.n();
    if n == 0 {
        return Ok(ExactScalar::one());
    }
    let grid = GridSpec::new(n, m.len())?;
    let boundary = BoundarySpec::fixed(
        singles(std::iter::repeat_n(1, n)),
        singles(std::iter::repeat_n(0, n)),
        singles(std::iter::repeat_n(0, m.len())),
        singles(m.parts().iter().copied()),
    );
    partition_function(&grid, &boundary, &BorodinKernel { point })
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

/// `Σ_σ Π_{i<j} pair[σ_i][σ_j] Π_i single[σ_i][i]`.
fn symmetrize(pair: &[Vec<ExactScalar>], single: &[Vec<ExactScalar>]) -> Result<ExactScalar> {
    let n = pair.len();
    let mut total = ExactScalar::zero();
    for_each_permutation(n, |sigma| {
        let mut t = ExactScalar::one();
        for i in 0..n {
            for j in i + 1..n {
                t = t * &pair[sigma[i]][sigma[j]];
            }
            t = t * &single[sigma[i]][i];
        }
        total = total.clone() + t;
        Ok(())
    })?;
    Ok(total)
}

fn pole_free_div(num: ExactScalar, den: ExactScalar, what: &str) -> Result<ExactScalar> {
    if den.is_zero() {
        return Err(Error::Pole(what.to_string()));
    }
    num.try_div(&den)
}

/// Largest `n` for which the `n!`-term symmetrizations are attempted.
pub const MAX_SYMMETRIZATION_VARS: usize = 8;

fn check_symmetrization_size(n: usize) -> Result<()> {
    if n > MAX_SYMMETRIZATION_VARS {
        return Err(Error::Unsupported(format!("symmetrization over {n}! permutations")));
    }
    Ok(())
}

/// `F_m` by its symmetrization formula over `S_n`.
pub fn spin_hl_f_symmetrized(m: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    check_size(m, point)?;
    let n = point.n();
    check_symmetrization_size(n)?;
    let EvalPoint { xs, q, s } = point;
    let one = ExactScalar::one();
    let mu = m.mu();
    let mut pair = vec![vec![ExactScalar::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                pair[a][b] = pole_free_div(xs[b].clone() - &(q.clone() * &xs[a]), xs[b].clone() - &xs[a], "x_i = x_j")?;
            }
        }
    }
    let mut single = Vec::with_capacity(n);
    let mut pre = (one.clone() - q).pow(n as u32);
    for x in xs {
        let base = pole_free_div(one.clone() - &(s.clone() * x), x.clone() - s, "x = s")?;
        single.push(mu.iter().map(|&e| base.pow(e)).collect());
        pre = pole_free_div(pre, x.clone() - s, "x = s")?;
    }
    Ok(pre * &symmetrize(&pair, &single)?)
}

/// Borodin's function by its symmetrization formula over `S_n`.
pub fn borodin_f_symmetrized(m: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    check_size(m, point)?;
    let n = point.n();
    check_symmetrization_size(n)?;
    let EvalPoint { xs, q, s } = point;
    let one = ExactScalar::one();
    let mu = m.mu();
    let mut pair = vec![vec![ExactScalar::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                pair[a][b] = pole_free_div(xs[a].clone() - &(q.clone() * &xs[b]), xs[a].clone() - &xs[b], "x_i = x_j")?;
            }
        }
    }
    let mut single = Vec::with_capacity(n);
    let mut pre = (one.clone() - q).pow(n as u32);
    for x in xs {
        let den = one.clone() - &(s.clone() * x);
        let base = pole_free_div(x.clone() - s, den.clone(), "s x = 1")?;
        single.push(mu.iter().map(|&e| base.pow(e)).collect());
        pre = pole_free_div(pre, den, "s x = 1")?;
    }
    Ok(pre * &symmetrize(&pair, &single)?)
}

/// Right-hand side of the relation `F_m(x) = Π x_i^{-1} · 𝓕_m(1/x)`.
pub fn spin_hl_f_via_borodin(m: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    let inv = point.inverted()?;
    let mut v = borodin_f(m, &inv)?;
    for x in &point.xs {
        v = v.try_div(x)?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::seeded;

    fn r(p: i64, q: i64) -> ExactScalar {
        ExactScalar::ratio(p, q)
    }

    #[test]
    fn composition_basics() {
        let m: Composition = "2,1,0,0".parse().unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.weighted_size(), 4);
        assert_eq!(m.mu(), vec![1, 0, 0]);
        assert_eq!("01000".parse::<Composition>().unwrap(), Composition::from([0, 1, 0, 0, 0]));
        assert_eq!(m.trimmed(), Composition::from([2, 1]));
        assert!(m.padded(1).is_err());
        assert_eq!(Composition::all_of_size(2, 2), vec![Composition::from([2, 0]), [1, 1].into(), [0, 2].into()]);
        assert_eq!(Composition::all_of_size(0, 0).len(), 1);
    }

    #[test]
    fn single_tile_values() {
        let p = EvalPoint::new(vec![ExactScalar::from(2)], ExactScalar::from(3), ExactScalar::from(5));
        assert_eq!(spin_hl_f(&[1].into(), &p).unwrap(), r(2, 3));
        assert_eq!(spin_hl_f_symmetrized(&[1].into(), &p).unwrap(), r(2, 3));
        // (1 - q)/(1 - s x)
        assert_eq!(borodin_f(&[1].into(), &p).unwrap(), r(-2, -9));
        // (1 - q)(1 - s x)/(x - s)^2
        assert_eq!(spin_hl_f(&[0, 1].into(), &p).unwrap(), r(-2 * -9, 9));
    }

    #[test]
    fn h_single_tile_at_inverse_q() {
        let (x, q) = (r(2, 7), r(1, 3));
        let v = wavefunction_h_at(&[1].into(), &[0].into(), std::slice::from_ref(&x), &q).unwrap();
        let one = ExactScalar::one();
        assert_eq!(v, (one.clone() - &q).try_div(&(one - &(q * &x))).unwrap());
    }

    #[test]
    fn lattice_matches_symmetrization_small() {
        let mut rng = seeded(11);
        for m in [Composition::from([1, 1]), [0, 2, 0].into(), [1, 0, 1].into()] {
            let p = EvalPoint::random(&mut rng, m.size() as usize);
            assert_eq!(spin_hl_f(&m, &p).unwrap(), spin_hl_f_symmetrized(&m, &p).unwrap());
            assert_eq!(borodin_f(&m, &p).unwrap(), borodin_f_symmetrized(&m, &p).unwrap());
            assert_eq!(spin_hl_f(&m, &p).unwrap(), spin_hl_f_via_borodin(&m, &p).unwrap());
        }
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let p = EvalPoint::new(vec![r(1, 2)], r(1, 3), r(1, 5));
        assert!(matches!(spin_hl_f(&[2].into(), &p), Err(Error::Invariant(_))));
        assert!(wavefunction_h_at(&[1, 0].into(), &[0].into(), &p.xs, &p.q).is_err());
    }
}
