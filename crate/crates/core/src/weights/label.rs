use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Particle counts carried by one edge, one coordinate per colour.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeLabel(SmallVec<[u32; 2]>);

impl EdgeLabel {
    pub fn new(counts: &[u32]) -> Self {
        Self(SmallVec::from_slice(counts))
    }

    pub fn single(n: u32) -> Self {
        Self::new(&[n])
    }

    pub fn pair(first: u32, second: u32) -> Self {
        Self::new(&[first, second])
    }

    pub fn zero(rank: usize) -> Self {
        Self(SmallVec::from_elem(0, rank))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Sum of all coordinates.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        (self.rank() == rhs.rank()).then(|| Self(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()))
    }

    /// Coordinatewise difference, `None` if any coordinate would go negative.
    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        if self.rank() != rhs.rank() {
            return None;
        }
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Self)
    }

    /// All labels of the given rank whose total is at most `cap`.
    pub fn all_within(rank: usize, cap: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; rank];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<EdgeLabel>) {
            if i == cur.len() {
                out.push(EdgeLabel::new(cur));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, cap, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<u32> for EdgeLabel {
    fn from(n: u32) -> Self {
        Self::single(n)
    }
}

impl From<(u32, u32)> for EdgeLabel {
    fn from((a, b): (u32, u32)) -> Self {
        Self::pair(a, b)
    }
}

/// Labels around one vertex: bottom `a`, left `b`, top `c`, right `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct TileState {
    pub a: EdgeLabel,
    pub b: EdgeLabel,
    pub c: EdgeLabel,
    pub d: EdgeLabel,
}

impl TileState {
    pub fn new(a: impl Into<EdgeLabel>, b: impl Into<EdgeLabel>, c: impl Into<EdgeLabel>, d: impl Into<EdgeLabel>) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    fn ranks_agree(&self) -> bool {
        let r = self.a.rank();
        self.b.rank() == r && self.c.rank() == r && self.d.rank() == r
    }

    /// `a + b = c + d` in every coordinate.
    pub fn conserves(&self) -> bool {
        self.ranks_agree() && self.a.checked_add(&self.b) == self.c.checked_add(&self.d)
    }

    pub(crate) fn require_rank(&self, r: usize) -> Result<()> {
        if self.ranks_agree() && self.rank() == r {
            Ok(())
        } else {
            Err(Error::Invariant(format!("expected rank-{r} labels, got {self:?}")))
        }
    }
}

/// Edge capacity: an integer spin, or the continuation `q^{-L} = s^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spin {
    Integer(u32),
    SquareS,
}

impl Spin {
    pub fn bound(self) -> Option<u32> {
        match self {
            Spin::Integer(n) => Some(n),
            Spin::SquareS => None,
        }
    }
}

/// Capacities of the horizontal (`l`) and vertical (`m`) lines and the rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SpinParams {
    pub l: Spin,
    pub m: Spin,
    pub r: usize,
}

impl SpinParams {
    pub fn new(l: Spin, m: Spin, r: usize) -> Result<Self> {
        if !(1..=2).contains(&r) {
            return Err(Error::Invariant(format!("rank must be 1 or 2, got {r}")));
        }
        for s in [l, m] {
            if s == Spin::Integer(0) {
                return Err(Error::Invariant("spins must be positive".into()));
            }
        }
        Ok(Self { l, m, r })
    }

    /// Integer spins with any rank; used by the Yang-Baxter checker.
    pub fn integer(l: u32, m: u32, r: usize) -> Result<Self> {
        if l == 0 || m == 0 || r == 0 {
            return Err(Error::Invariant("spins and rank must be positive".into()));
        }
        Ok(Self { l: Spin::Integer(l), m: Spin::Integer(m), r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conservation_and_arith() {
        let t = TileState::new((1, 0), (0, 1), (0, 1), (1, 0));
        assert!(t.conserves());
        let u = TileState::new(1, 0, 1, 1);
        assert!(!u.conserves());
        assert_eq!(EdgeLabel::pair(2, 1).checked_sub(&EdgeLabel::pair(1, 1)), Some(EdgeLabel::pair(1, 0)));
        assert_eq!(EdgeLabel::pair(0, 1).checked_sub(&EdgeLabel::pair(1, 0)), None);
    }

    #[test]
    fn enumerates_labels_within_capacity() {
        assert_eq!(EdgeLabel::all_within(2, 2).len(), 6);
        assert_eq!(EdgeLabel::all_within(1, 3).len(), 4);
    }

    #[test]
    fn tile_json() {
        let t = TileState::new((1, 0), (0, 0), (1, 0), (0, 0));
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"a":[1,0],"b":[0,0],"c":[1,0],"d":[0,0]}"#);
    }

    #[test]
    fn spin_params_validation() {
        assert!(SpinParams::new(Spin::Integer(1), Spin::SquareS, 3).is_err());
        assert!(SpinParams::new(Spin::Integer(0), Spin::Integer(1), 1).is_err());
    }
}
