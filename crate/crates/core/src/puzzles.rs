//! Six-vertex and higher-spin puzzles and the structure constants they compute.
//!
//! Strings along the top and bottom (`l`, `w`) are indexed from the rightmost
//! column; strings along the left and right (`m`, `k`) from the top row.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{q_pochhammer, ExactScalar, Field, ParamPoly, ParamRatFunc, Ring};
use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_configs, partition_function, partition_function_free_right, BoundarySpec, CountingKernel, GridSpec,
    Kernel, LatticeConfig,
};
use crate::symmetric::Composition;
use crate::weights::{puzzle_tile_6v, puzzle_tile_weight_6v_at, puzzle_tile_weight_hs_at, puzzle_tiles_6v};
use crate::weights::{Color, EdgeLabel, TileState};

/// Six-vertex puzzle tiles with `q` taken from any ring.
pub struct Puzzle6vKernel<R> {
    q: R,
    table: HashMap<(EdgeLabel, EdgeLabel), Vec<(EdgeLabel, EdgeLabel)>>,
}

impl<R: Ring> Puzzle6vKernel<R> {
    pub fn new(q: R) -> Self {
        let mut table: HashMap<_, Vec<_>> = HashMap::new();
        for (t, _, _) in puzzle_tiles_6v() {
            table.entry((t.a, t.b)).or_default().push((t.c, t.d));
        }
        Self { q, table }
    }
}

impl<R: Ring> Kernel for Puzzle6vKernel<R> {
    type Weight = R;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        self.table.get(&(a.clone(), b.clone())).cloned().unwrap_or_default()
    }

    fn weight(&self, _row: usize, _col: usize, tile: &TileState) -> Result<R> {
        Ok(puzzle_tile_weight_6v_at(tile, &self.q))
    }
}

/// Validates a six-vertex product-rule boundary and returns `n`.
fn validate_6v(l: &Composition, w: &Composition, m: &Composition) -> Result<u32> {
    for (name, v) in [("l", l), ("w", w), ("m", m)] {
        if !v.is_binary() {
            return Err(Error::Invariant(format!("{name} = {v} is not a 0/1 string")));
        }
    }
    if l.is_empty() || m.is_empty() {
        return Err(Error::Invariant("l and m must be nonempty".into()));
    }
    if l.len() != w.len() {
        return Err(Error::Invariant(format!("l and w differ in length: {l} vs {w}")));
    }
    let n = m.size();
    if l.size() != w.size() + n {
        return Err(Error::Invariant(format!(
            "count(l) = {} must equal count(w) + count(m) = {} + {n}",
            l.size(),
            w.size()
        )));
    }
    Ok(n)
}

fn color_labels(v: impl Iterator<Item = Color>) -> Vec<EdgeLabel> {
    v.map(Color::label).collect()
}

fn boundary_6v(l: &Composition, w: &Composition, m: &Composition, k: Option<&Composition>) -> Result<(GridSpec, BoundarySpec)> {
    let (p, n_cols) = (m.len(), l.len());
    let along = |v: &Composition| color_labels((0..n_cols).map(|j| if v.get(n_cols - 1 - j) == 1 { Color::Red } else { Color::White }));
    let left = color_labels(m.parts().iter().map(|&x| if x == 1 { Color::Red } else { Color::Blue }));
    let grid = GridSpec::new(p, n_cols)?;
    let boundary = match k {
        Some(k) => {
            let right = color_labels(k.parts().iter().map(|&x| if x == 1 { Color::White } else { Color::Blue }));
            BoundarySpec::fixed(left, right, along(w), along(l))
        }
        None => BoundarySpec::free_right(left, along(w), along(l)),
    };
    Ok((grid, boundary))
}

fn check_k_6v(m: &Composition, k: &Composition) -> Result<()> {
    if !k.is_binary() || k.len() != m.len() {
        return Err(Error::Invariant(format!("k = {k} must be a 0/1 string of length {}", m.len())));
    }
    Ok(())
}

/// `C^{k,w}_{l,m}` as a polynomial in `q`.
pub fn coeff_6v(l: &Composition, w: &Composition, m: &Composition, k: &Composition) -> Result<ParamPoly> {
    validate_6v(l, w, m)?;
    check_k_6v(m, k)?;
    let (grid, boundary) = boundary_6v(l, w, m, Some(k))?;
    partition_function(&grid, &boundary, &Puzzle6vKernel::new(ParamPoly::q()))
}

/// One term `C^{k,w}_{l,m} H_k` of a six-vertex expansion.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Expansion6vTerm {
    pub k: Composition,
    pub coeff: ParamPoly,
    pub puzzles: usize,
}

fn right_to_k_6v(right: &[EdgeLabel]) -> Option<Composition> {
    right
        .iter()
        .map(|e| match Color::of(e)? {
            Color::White => Some(1),
            Color::Blue => Some(0),
            Color::Red => None,
        })
        .collect::<Option<Vec<u32>>>()
        .map(Composition::new)
}

fn count_value(v: &ExactScalar) -> usize {
    usize::try_from(v.numer()).expect("configuration count fits in usize")
}

/// All nonzero `C^{k,w}_{l,m}` with `k` of the same length as `m`, listed in
/// decreasing lexicographic order of `k`.
pub fn expand_6v(l: &Composition, w: &Composition, m: &Composition) -> Result<Vec<Expansion6vTerm>> {
    validate_6v(l, w, m)?;
    let (grid, boundary) = boundary_6v(l, w, m, None)?;
    let kernel = Puzzle6vKernel::new(ParamPoly::q());
    let coeffs = partition_function_free_right(&grid, &boundary, &kernel)?;
    let counts = partition_function_free_right(&grid, &boundary, &CountingKernel(&kernel))?;
    let mut out: Vec<Expansion6vTerm> = coeffs
        .into_iter()
        .filter_map(|(right, coeff)| {
            let k = right_to_k_6v(&right)?;
            let puzzles = counts.get(&right).map_or(0, count_value);
            Some(Expansion6vTerm { k, coeff, puzzles })
        })
        .collect();
    out.sort_by(|a, b| b.k.cmp(&a.k));
    Ok(out)
}

/// Every six-vertex puzzle with the given boundary, with its weight.
pub fn puzzles_6v(
    l: &Composition,
    w: &Composition,
    m: &Composition,
    k: &Composition,
) -> Result<Vec<(LatticeConfig, ParamPoly)>> {
    validate_6v(l, w, m)?;
    check_k_6v(m, k)?;
    let (grid, boundary) = boundary_6v(l, w, m, Some(k))?;
    enumerate_configs(&grid, &boundary, &Puzzle6vKernel::new(ParamPoly::q()))
}

/// Number of tiles whose right edge is red.
pub fn red_right_edge_count(config: &LatticeConfig) -> usize {
    config.tiles().filter(|t| Color::of(&t.d) == Some(Color::Red)).count()
}

/// `N n - n - Σ_i (i - 1)(l_i - w_i)`, the red right-edge count every puzzle
/// with top `l` and bottom `w` must have.
pub fn expected_red_right_edge_count(l: &Composition, w: &Composition) -> i64 {
    let n = i64::from(l.size()) - i64::from(w.size());
    let big_n = l.len() as i64;
    let shift: i64 = (0..l.len()).map(|i| i as i64 * (i64::from(l.get(i)) - i64::from(w.get(i)))).sum();
    big_n * n - n - shift
}

/// Common sign of all coefficients: `Some(1)`, `Some(-1)`, or `None` when
/// mixed. The zero polynomial has sign `Some(0)`.
pub fn coefficient_sign(p: &ParamPoly) -> Option<i8> {
    let mut sign = 0i8;
    for (_, c) in p.terms() {
        let s = if c.is_negative() { -1 } else { 1 };
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return None;
        }
    }
    Some(sign)
}

/// Sign of a single six-vertex puzzle: the product of its tile signs.
pub fn puzzle_sign_6v(config: &LatticeConfig) -> i8 {
    config
        .tiles()
        .map(|t| puzzle_tile_6v(t).map_or(0, |(s, _)| s as i8))
        .product()
}

type TileCache<F> = RwLock<HashMap<TileState, F>>;

/// Higher-spin puzzle tiles at fixed `(q, s)`, numeric or symbolic.
pub struct PuzzleHsKernel<F> {
    q: F,
    s: F,
    max_label: u32,
    cache: TileCache<F>,
}

impl<F: Field> PuzzleHsKernel<F> {
    /// `max_label` bounds the blue coordinate on every edge.
    pub fn new(q: F, s: F, max_label: u32) -> Self {
        Self { q, s, max_label, cache: RwLock::new(HashMap::new()) }
    }

    fn tile(&self, tile: &TileState) -> Result<F> {
        if let Some(v) = self.cache.read().expect("cache lock").get(tile) {
            return Ok(v.clone());
        }
        let v = puzzle_tile_weight_hs_at(tile, &self.q, &self.s)?;
        self.cache.write().expect("cache lock").insert(tile.clone(), v.clone());
        Ok(v)
    }
}

impl PuzzleHsKernel<ParamRatFunc> {
    pub fn symbolic(max_label: u32) -> Self {
        Self::new(ParamRatFunc::q(), ParamRatFunc::s(), max_label)
    }
}

impl<F: Field> Kernel for PuzzleHsKernel<F> {
    type Weight = F;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        let (a1, a2, b1, b2) = (a.get(0), a.get(1), b.get(0), b.get(1));
        if b1 > b2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for d1 in 0..=a1 + b1 {
            let c1 = a1 + b1 - d1;
            for d2 in d1..=self.max_label {
                // a2 + d2 = b2 + c2
                let Some(c2) = (a2 + d2).checked_sub(b2) else { continue };
                if c2 <= self.max_label {
                    out.push((EdgeLabel::pair(c1, c2), EdgeLabel::pair(d1, d2)));
                }
            }
        }
        out
    }

    fn weight(&self, _row: usize, _col: usize, tile: &TileState) -> Result<F> {
        self.tile(tile)
    }
}

fn validate_hs(l: &Composition, m: &Composition) -> Result<u32> {
    if l.is_empty() || m.is_empty() {
        return Err(Error::Invariant("l and m must be nonempty".into()));
    }
    if l.size() != m.size() {
        return Err(Error::Invariant(format!("size(l) = {} differs from size(m) = {}", l.size(), m.size())));
    }
    Ok(l.size())
}

fn boundary_hs(l: &Composition, m: &Composition, k: Option<&Composition>) -> Result<(GridSpec, BoundarySpec)> {
    let n_cols = l.len();
    let top = (0..n_cols).map(|j| EdgeLabel::pair(l.get(n_cols - 1 - j), 0)).collect();
    let bottom = vec![EdgeLabel::pair(0, 0); n_cols];
    let left = m.parts().iter().map(|&x| EdgeLabel::pair(x, x)).collect();
    let grid = GridSpec::new(m.len(), n_cols)?;
    Ok(match k {
        Some(k) => {
            let right = k.parts().iter().map(|&x| EdgeLabel::pair(0, x)).collect();
            (grid, BoundarySpec::fixed(left, right, bottom, top))
        }
        None => (grid, BoundarySpec::free_right(left, bottom, top)),
    })
}

fn comb2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// `Π_i q^{C(k_i, 2)} (q;q)_{l_i} / ((q;q)_{k_i} (s²;q)_{l_i})`.
pub fn pochhammer_factor<F: Field>(l: &Composition, k: &Composition, q: &F, s: &F) -> Result<F> {
    let s2 = s.clone() * s;
    let poch = |a: &F, n: u32| q_pochhammer(a, q, i64::from(n)).expect("nonnegative index");
    let mut num = F::one();
    let mut den = F::one();
    for i in 0..l.len().max(k.len()) {
        let (li, ki) = (l.get(i), k.get(i));
        num = num * &q.pow(comb2(ki)) * &poch(q, li);
        den = den * &poch(q, ki) * &poch(&s2, li);
    }
    if den.is_zero() {
        return Err(Error::Pole("Pochhammer factor of the structure constant vanishes".into()));
    }
    num.try_div(&den)
}

/// `𝒞^k_{l,m}(q, s) = sign · s^{s_power} · body`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructureConstant {
    pub k: Composition,
    /// `(-1)^{|m| - |k|}`.
    pub sign: i8,
    /// `|l| + |m| - |k|`.
    pub s_power: i64,
    /// Puzzle partition function times the Pochhammer factor.
    pub body: ParamRatFunc,
    pub puzzle_count: usize,
}

impl StructureConstant {
    pub fn value(&self) -> ParamRatFunc {
        ParamRatFunc::from(i64::from(self.sign)) * &ParamRatFunc::s_pow(self.s_power) * &self.body
    }

    pub fn evaluate(&self, q: &ExactScalar, s: &ExactScalar) -> Result<ExactScalar> {
        let b = self.body.evaluate(q, s)?;
        Ok(ExactScalar::from(i64::from(self.sign)) * &s.powi(self.s_power)? * &b)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

fn prefactor_exponents(l: &Composition, m: &Composition, k: &Composition) -> (i8, i64) {
    let sign = if (m.weighted_size() - k.weighted_size()).rem_euclid(2) == 0 { 1 } else { -1 };
    (sign, l.weighted_size() + m.weighted_size() - k.weighted_size())
}

fn check_k_hs(m: &Composition, k: &Composition) -> Result<()> {
    if k.len() != m.len() {
        return Err(Error::Invariant(format!("k = {k} must have {} parts like m", m.len())));
    }
    Ok(())
}

/// `𝒞^k_{l,m}` with the puzzle grid of `len(m)` rows and `len(l)` columns.
pub fn structure_constant_hs(l: &Composition, m: &Composition, k: &Composition) -> Result<StructureConstant> {
    let n = validate_hs(l, m)?;
    check_k_hs(m, k)?;
    let (sign, s_power) = prefactor_exponents(l, m, k);
    if k.size() != n {
        return Ok(StructureConstant { k: k.clone(), sign, s_power, body: ParamRatFunc::zero(), puzzle_count: 0 });
    }
    let (grid, boundary) = boundary_hs(l, m, Some(k))?;
    let kernel = PuzzleHsKernel::symbolic(n);
    let z = partition_function(&grid, &boundary, &kernel)?;
    let count = partition_function(&grid, &boundary, &CountingKernel(&kernel))?;
    let body = z * &pochhammer_factor(l, k, &ParamRatFunc::q(), &ParamRatFunc::s())?;
    Ok(StructureConstant { k: k.clone(), sign, s_power, body, puzzle_count: count_value(&count) })
}

/// `𝒞^k_{l,m}` evaluated at a numeric `(q, s)`.
pub fn structure_constant_hs_at(
    l: &Composition,
    m: &Composition,
    k: &Composition,
    q: &ExactScalar,
    s: &ExactScalar,
) -> Result<ExactScalar> {
    let n = validate_hs(l, m)?;
    check_k_hs(m, k)?;
    if k.size() != n {
        return Ok(ExactScalar::zero());
    }
    let (grid, boundary) = boundary_hs(l, m, Some(k))?;
    let z = partition_function(&grid, &boundary, &PuzzleHsKernel::new(q.clone(), s.clone(), n))?;
    finish_numeric(l, m, k, z, q, s)
}

fn finish_numeric(
    l: &Composition,
    m: &Composition,
    k: &Composition,
    z: ExactScalar,
    q: &ExactScalar,
    s: &ExactScalar,
) -> Result<ExactScalar> {
    if z.is_zero() {
        return Ok(z);
    }
    let (sign, s_power) = prefactor_exponents(l, m, k);
    Ok(ExactScalar::from(i64::from(sign)) * &s.powi(s_power)? * &z * &pochhammer_factor(l, k, q, s)?)
}

/// Number of puzzle rows used by [`expand_hs`] when none is given.
pub fn default_rows_hs(l: &Composition, m: &Composition) -> usize {
    m.len() + l.len()
}

fn padded_m(l: &Composition, m: &Composition, rows: Option<usize>) -> Result<Composition> {
    let p = rows.unwrap_or_else(|| default_rows_hs(l, m));
    if p < m.len() {
        return Err(Error::Invariant(format!("{p} rows cannot hold m = {m}")));
    }
    m.padded(p)
}

fn right_to_k_hs(right: &[EdgeLabel]) -> Option<Composition> {
    right
        .iter()
        .map(|e| (e.get(0) == 0).then(|| e.get(1)))
        .collect::<Option<Vec<u32>>>()
        .map(Composition::new)
}

/// All nonzero `𝒞^k_{l,m}` with `k` of length `rows` (default
/// `len(m) + len(l)`), `m` padded with zeros to that length. Listed in
/// decreasing lexicographic order of `k`.
pub fn expand_hs(l: &Composition, m: &Composition, rows: Option<usize>) -> Result<Vec<StructureConstant>> {
    let n = validate_hs(l, m)?;
    let m = padded_m(l, m, rows)?;
    let (grid, boundary) = boundary_hs(l, &m, None)?;
    let kernel = PuzzleHsKernel::symbolic(n);
    let sums = partition_function_free_right(&grid, &boundary, &kernel)?;
    let counts = partition_function_free_right(&grid, &boundary, &CountingKernel(&kernel))?;
    let q = ParamRatFunc::q();
    let s = ParamRatFunc::s();
    let mut out = Vec::new();
    for (right, z) in sums {
        let Some(k) = right_to_k_hs(&right) else { continue };
        let (sign, s_power) = prefactor_exponents(l, &m, &k);
        let body = z * &pochhammer_factor(l, &k, &q, &s)?;
        let puzzle_count = counts.get(&right).map_or(0, count_value);
        out.push(StructureConstant { k, sign, s_power, body, puzzle_count });
    }
    out.sort_by(|a, b| b.k.cmp(&a.k));
    Ok(out)
}

/// [`expand_hs`] evaluated at a numeric `(q, s)`: pairs `(k, 𝒞^k_{l,m})`.
pub fn expand_hs_at(
    l: &Composition,
    m: &Composition,
    rows: Option<usize>,
    q: &ExactScalar,
    s: &ExactScalar,
) -> Result<Vec<(Composition, ExactScalar)>> {
    let n = validate_hs(l, m)?;
    let m = padded_m(l, m, rows)?;
    let (grid, boundary) = boundary_hs(l, &m, None)?;
    let kernel = PuzzleHsKernel::new(q.clone(), s.clone(), n);
    let sums = partition_function_free_right(&grid, &boundary, &kernel)?;
    let mut out = Vec::new();
    for (right, z) in sums {
        let Some(k) = right_to_k_hs(&right) else { continue };
        let v = finish_numeric(l, &m, &k, z, q, s)?;
        if !v.is_zero() {
            out.push((k, v));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// One higher-spin puzzle with its raw tile-product weight and its full
/// contribution to `𝒞^k_{l,m}` (prefactor and Pochhammer factor included).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PuzzleHs {
    pub config: LatticeConfig,
    pub weight: ParamRatFunc,
    pub contribution: ParamRatFunc,
}

/// Every higher-spin puzzle with boundary `(l, m, k)`.
pub fn puzzles_hs(l: &Composition, m: &Composition, k: &Composition) -> Result<Vec<PuzzleHs>> {
    let n = validate_hs(l, m)?;
    check_k_hs(m, k)?;
    let (grid, boundary) = boundary_hs(l, m, Some(k))?;
    let kernel = PuzzleHsKernel::symbolic(n);
    let (sign, s_power) = prefactor_exponents(l, m, k);
    let factor = ParamRatFunc::from(i64::from(sign))
        * &ParamRatFunc::s_pow(s_power)
        * &pochhammer_factor(l, k, &ParamRatFunc::q(), &ParamRatFunc::s())?;
    Ok(enumerate_configs(&grid, &boundary, &kernel)?
        .into_iter()
        .map(|(config, weight)| {
            let contribution = weight.clone() * &factor;
            PuzzleHs { config, weight, contribution }
        })
        .collect())
}
