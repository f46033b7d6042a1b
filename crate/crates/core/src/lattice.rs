//! Partition functions of rectangular vertex models.
//!
//! Rows are numbered from the top (row 0) and columns from the left. Left and
//! right boundary labels are listed top to bottom, bottom and top labels left
//! to right. Each cell sees its labels as bottom `a`, left `b`, top `c`,
//! right `d`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactScalar, Ring};
use crate::error::{Error, Result};
use crate::weights::{EdgeLabel, TileState};

/// A per-cell weight function together with the local transition rule.
pub trait Kernel: Sync {
    type Weight: Ring;

    /// Candidate `(top, right)` labels for a cell with bottom `a` and left `b`.
    /// May over-approximate; zero-weight candidates are discarded.
    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)>;

    fn weight(&self, row: usize, col: usize, tile: &TileState) -> Result<Self::Weight>;
}

impl<K: Kernel> Kernel for &K {
    type Weight = K::Weight;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        (**self).outputs(a, b)
    }

    fn weight(&self, row: usize, col: usize, tile: &TileState) -> Result<K::Weight> {
        (**self).weight(row, col, tile)
    }
}

/// Replaces every nonzero weight by one, so partition functions count
/// configurations with nonzero weight.
pub struct CountingKernel<K>(pub K);

impl<K: Kernel> Kernel for CountingKernel<K> {
    type Weight = ExactScalar;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        self.0.outputs(a, b)
    }

    fn weight(&self, row: usize, col: usize, tile: &TileState) -> Result<ExactScalar> {
        let w = self.0.weight(row, col, tile)?;
        Ok(if w.is_zero() { ExactScalar::zero() } else { ExactScalar::one() })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invariant(format!("grid must be at least 1x1, got {rows}x{cols}")));
        }
        Ok(Self { rows, cols })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: Vec<EdgeLabel>,
    pub right: Vec<EdgeLabel>,
    pub bottom: Vec<EdgeLabel>,
    pub top: Vec<EdgeLabel>,
    /// Side whose labels are summed over; its label list is ignored.
    pub free: Option<Side>,
}

impl BoundarySpec {
    pub fn fixed(left: Vec<EdgeLabel>, right: Vec<EdgeLabel>, bottom: Vec<EdgeLabel>, top: Vec<EdgeLabel>) -> Self {
        Self { left, right, bottom, top, free: None }
    }

    pub fn free_right(left: Vec<EdgeLabel>, bottom: Vec<EdgeLabel>, top: Vec<EdgeLabel>) -> Self {
        Self { left, right: Vec::new(), bottom, top, free: Some(Side::Right) }
    }

    fn validate(&self, grid: &GridSpec) -> Result<()> {
        let check = |side: &str, labels: &[EdgeLabel], want: usize| {
            if labels.len() == want {
                Ok(())
            } else {
                Err(Error::Invariant(format!("{side} boundary has {} labels, grid needs {want}", labels.len())))
            }
        };
        check("left", &self.left, grid.rows)?;
        if self.free != Some(Side::Right) {
            check("right", &self.right, grid.rows)?;
        }
        check("bottom", &self.bottom, grid.cols)?;
        check("top", &self.top, grid.cols)?;
        match self.free {
            None | Some(Side::Right) => Ok(()),
            Some(side) => Err(Error::Unsupported(format!("free {side:?} boundary; only the right side may be free"))),
        }
    }
}

/// One assignment of labels to every edge, stored as the tile of each cell.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeConfig {
    /// `cells[i][j]` is row `i` (top first), column `j` (left first).
    pub cells: Vec<Vec<TileState>>,
}

impl LatticeConfig {
    pub fn tiles(&self) -> impl Iterator<Item = &TileState> {
        self.cells.iter().flatten()
    }

    /// Right boundary labels, top to bottom.
    pub fn right_boundary(&self) -> Vec<EdgeLabel> {
        self.cells.iter().map(|row| row.last().expect("nonempty row").d.clone()).collect()
    }
}

type CellState = (Vec<EdgeLabel>, EdgeLabel);

const PARALLEL_FRONTIER: usize = 64;

fn advance<K: Kernel>(
    kernel: &K,
    row: usize,
    col: usize,
    key: &CellState,
    w: &K::Weight,
) -> Result<Vec<(CellState, K::Weight)>> {
    let (h, a) = key;
    let b = &h[row];
    let mut out = Vec::new();
    for (c, d) in kernel.outputs(a, b) {
        let tile = TileState { a: a.clone(), b: b.clone(), c, d };
        let cw = kernel.weight(row, col, &tile)?;
        if cw.is_zero() {
            continue;
        }
        let mut nh = h.clone();
        nh[row] = tile.d;
        out.push(((nh, tile.c), w.clone() * &cw));
    }
    Ok(out)
}

fn accumulate<W: Ring, Key: Ord>(map: &mut BTreeMap<Key, W>, key: Key, w: W) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(w);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + &w;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Column sweep: returns the weighted right-boundary distribution.
fn sweep<K: Kernel>(grid: &GridSpec, boundary: &BoundarySpec, kernel: &K) -> Result<BTreeMap<Vec<EdgeLabel>, K::Weight>>
where
    K::Weight: Send,
{
    let mut states: BTreeMap<Vec<EdgeLabel>, K::Weight> = BTreeMap::new();
    states.insert(boundary.left.clone(), K::Weight::one());
    for col in 0..grid.cols {
        let mut cur: BTreeMap<CellState, K::Weight> = states
            .into_iter()
            .map(|(h, w)| ((h, boundary.bottom[col].clone()), w))
            .collect();
        for row in (0..grid.rows).rev() {
            let entries: Vec<(CellState, K::Weight)> = cur.into_iter().collect();
            let produced: Vec<Vec<(CellState, K::Weight)>> = if entries.len() >= PARALLEL_FRONTIER {
                entries
                    .par_iter()
                    .map(|(k, w)| advance(kernel, row, col, k, w))
                    .collect::<Result<_>>()?
            } else {
                entries
                    .iter()
                    .map(|(k, w)| advance(kernel, row, col, k, w))
                    .collect::<Result<_>>()?
            };
            cur = BTreeMap::new();
            for (k, w) in produced.into_iter().flatten() {
                accumulate(&mut cur, k, w);
            }
        }
        states = BTreeMap::new();
        for ((h, v), w) in cur {
            if v == boundary.top[col] {
                accumulate(&mut states, h, w);
            }
        }
    }
    Ok(states)
}

/// Sum over all configurations of the product of cell weights.
pub fn partition_function<K: Kernel>(grid: &GridSpec, boundary: &BoundarySpec, kernel: &K) -> Result<K::Weight>
where
    K::Weight: Send,
{
    boundary.validate(grid)?;
    if boundary.free.is_some() {
        return Err(Error::Invariant("partition_function needs a fully fixed boundary".into()));
    }
    let states = sweep(grid, boundary, kernel)?;
    Ok(states.get(&boundary.right).cloned().unwrap_or_else(K::Weight::zero))
}

/// Partition functions for every right boundary, with the right side free.
/// Only right boundaries with a nonzero total appear.
pub fn partition_function_free_right<K: Kernel>(
    grid: &GridSpec,
    boundary: &BoundarySpec,
    kernel: &K,
) -> Result<BTreeMap<Vec<EdgeLabel>, K::Weight>>
where
    K::Weight: Send,
{
    boundary.validate(grid)?;
    if boundary.free != Some(Side::Right) {
        return Err(Error::Invariant("boundary must have a free right side".into()));
    }
    sweep(grid, boundary, kernel)
}

struct Dfs<'a, K: Kernel, Cb> {
    grid: &'a GridSpec,
    boundary: &'a BoundarySpec,
    kernel: &'a K,
    cells: Vec<Vec<Option<TileState>>>,
    callback: Cb,
}

impl<K, Cb> Dfs<'_, K, Cb>
where
    K: Kernel,
    Cb: FnMut(&LatticeConfig, &K::Weight),
{
    // cells are filled bottom row first, left to right within a row
    fn visit(&mut self, pos: usize, w: K::Weight) -> Result<()> {
        let (rows, cols) = (self.grid.rows, self.grid.cols);
        if pos == rows * cols {
            let cfg = LatticeConfig {
                cells: self
                    .cells
                    .iter()
                    .map(|r| r.iter().map(|c| c.clone().expect("filled")).collect())
                    .collect(),
            };
            (self.callback)(&cfg, &w);
            return Ok(());
        }
        let row = rows - 1 - pos / cols;
        let col = pos % cols;
        let a = if row == rows - 1 {
            self.boundary.bottom[col].clone()
        } else {
            self.cells[row + 1][col].as_ref().expect("filled").c.clone()
        };
        let b = if col == 0 {
            self.boundary.left[row].clone()
        } else {
            self.cells[row][col - 1].as_ref().expect("filled").d.clone()
        };
        for (c, d) in self.kernel.outputs(&a, &b) {
            if row == 0 && c != self.boundary.top[col] {
                continue;
            }
            if col == cols - 1 && self.boundary.free.is_none() && d != self.boundary.right[row] {
                continue;
            }
            let tile = TileState { a: a.clone(), b: b.clone(), c, d };
            let cw = self.kernel.weight(row, col, &tile)?;
            if cw.is_zero() {
                continue;
            }
            self.cells[row][col] = Some(tile);
            self.visit(pos + 1, w.clone() * &cw)?;
        }
        self.cells[row][col] = None;
        Ok(())
    }
}

/// Calls `callback` on every configuration of nonzero weight, in a fixed
/// depth-first order (bottom row first, left to right). A free right side is
/// allowed.
pub fn for_each_config<K, Cb>(grid: &GridSpec, boundary: &BoundarySpec, kernel: &K, callback: Cb) -> Result<()>
where
    K: Kernel,
    Cb: FnMut(&LatticeConfig, &K::Weight),
{
    boundary.validate(grid)?;
    let mut dfs = Dfs {
        grid,
        boundary,
        kernel,
        cells: vec![vec![None; grid.cols]; grid.rows],
        callback,
    };
    dfs.visit(0, K::Weight::one())
}

/// All configurations of nonzero weight with their weights.
pub fn enumerate_configs<K: Kernel>(
    grid: &GridSpec,
    boundary: &BoundarySpec,
    kernel: &K,
) -> Result<Vec<(LatticeConfig, K::Weight)>> {
    let mut out = Vec::new();
    for_each_config(grid, boundary, kernel, |c, w| out.push((c.clone(), w.clone())))?;
    Ok(out)
}

/// Rank-1 transitions with 0/1 vertical labels and unbounded horizontal ones.
pub(crate) fn outputs_binary_vertical(a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
    let total = a.get(0) + b.get(0);
    (0..=1u32.min(total)).map(|c| (EdgeLabel::single(c), EdgeLabel::single(total - c))).collect()
}

/// Rank-1 transitions with 0/1 horizontal labels and unbounded vertical ones.
pub(crate) fn outputs_binary_horizontal(a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
    let total = a.get(0) + b.get(0);
    (0..=1u32.min(total)).map(|d| (EdgeLabel::single(total - d), EdgeLabel::single(d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank-1 kernel with labels capped at `cap` and weight `1 + a + 2b + 3c + 5d + row + col`.
    struct Toy {
        cap: u32,
    }

    impl Kernel for Toy {
        type Weight = ExactScalar;

        fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
            let t = a.get(0) + b.get(0);
            (0..=t)
                .filter(|&c| c <= self.cap && t - c <= self.cap)
                .map(|c| (EdgeLabel::single(c), EdgeLabel::single(t - c)))
                .collect()
        }

        fn weight(&self, row: usize, col: usize, t: &TileState) -> Result<ExactScalar> {
            let v = 1 + t.a.get(0) + 2 * t.b.get(0) + 3 * t.c.get(0) + 5 * t.d.get(0);
            Ok(ExactScalar::from(i64::from(v) + row as i64 + col as i64))
        }
    }

    fn labels(v: &[u32]) -> Vec<EdgeLabel> {
        v.iter().map(|&x| EdgeLabel::single(x)).collect()
    }

    #[test]
    fn dp_matches_enumeration() {
        let grid = GridSpec::new(2, 3).unwrap();
        let b = BoundarySpec::fixed(labels(&[1, 2]), labels(&[2, 0]), labels(&[1, 0, 1]), labels(&[0, 2, 1]));
        let k = Toy { cap: 2 };
        let z = partition_function(&grid, &b, &k).unwrap();
        let configs = enumerate_configs(&grid, &b, &k).unwrap();
        let sum = configs.iter().fold(ExactScalar::zero(), |acc, (_, w)| acc + w);
        assert!(!configs.is_empty());
        assert_eq!(z, sum);
    }

    #[test]
    fn unbalanced_boundary_gives_zero() {
        let grid = GridSpec::new(2, 2).unwrap();
        let b = BoundarySpec::fixed(labels(&[1, 1]), labels(&[0, 0]), labels(&[0, 0]), labels(&[1, 0]));
        assert!(partition_function(&grid, &b, &Toy { cap: 2 }).unwrap().is_zero());
    }

    #[test]
    fn free_right_partitions_the_total() {
        let grid = GridSpec::new(2, 2).unwrap();
        let b = BoundarySpec::free_right(labels(&[1, 1]), labels(&[1, 0]), labels(&[0, 1]));
        let k = Toy { cap: 2 };
        let all = partition_function_free_right(&grid, &b, &k).unwrap();
        for (right, w) in &all {
            let fixed = BoundarySpec { right: right.clone(), free: None, ..b.clone() };
            assert_eq!(&partition_function(&grid, &fixed, &k).unwrap(), w);
        }
        let count = CountingKernel(&k);
        let n: usize = enumerate_configs(&grid, &b, &count).unwrap().len();
        let total = partition_function_free_right(&grid, &b, &count)
            .unwrap()
            .values()
            .fold(ExactScalar::zero(), |a, w| a + w);
        assert_eq!(total, ExactScalar::from(n as i64));
    }

    #[test]
    fn only_right_side_may_be_free() {
        let grid = GridSpec::new(1, 1).unwrap();
        let mut b = BoundarySpec::fixed(labels(&[0]), labels(&[0]), labels(&[0]), labels(&[0]));
        b.free = Some(Side::Top);
        assert!(matches!(partition_function_free_right(&grid, &b, &Toy { cap: 1 }), Err(Error::Unsupported(_))));
        assert!(GridSpec::new(0, 1).is_err());
    }
}
