use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{q_binomial_value, q_pochhammer, Field, ParamPoly, ParamRatFunc, Ring};
use crate::error::{Error, Result};

use super::label::{EdgeLabel, TileState};

/// Edge colour in a six-vertex puzzle. Red is the first coordinate of a
/// rank-2 label, blue the second, white is empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Red,
    Blue,
}

impl Color {
    pub fn label(self) -> EdgeLabel {
        match self {
            Color::White => EdgeLabel::pair(0, 0),
            Color::Red => EdgeLabel::pair(1, 0),
            Color::Blue => EdgeLabel::pair(0, 1),
        }
    }

    pub fn of(label: &EdgeLabel) -> Option<Self> {
        match label.counts() {
            [0, 0] => Some(Color::White),
            [1, 0] => Some(Color::Red),
            [0, 1] => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "W",
            Color::Red => "R",
            Color::Blue => "B",
        })
    }
}

/// Nonzero six-vertex puzzle tiles as `(bottom, left, top, right, sign, q-power)`.
pub const PUZZLE_TILES_6V: [(Color, Color, Color, Color, i64, u32); 12] = {
    use Color::*;
    [
        (White, Red, White, Red, 1, 0),
        (Red, White, Red, White, 1, 0),
        (White, Red, Red, White, 1, 0),
        (Red, White, White, Red, 1, 0),
        (White, Blue, White, Blue, 1, 0),
        (Blue, White, Blue, White, 1, 0),
        (White, Blue, Blue, White, 1, 0),
        (Blue, White, White, Blue, 1, 0),
        (Red, Blue, Red, Blue, 1, 0),
        (Blue, Red, Blue, Red, 1, 1),
        (Red, Blue, Blue, Red, -1, 0),
        (Blue, Red, Red, Blue, -1, 1),
    ]
};

/// `(sign, q-power)` of a six-vertex puzzle tile, `None` when its weight is 0.
pub fn puzzle_tile_6v(tile: &TileState) -> Option<(i64, u32)> {
    let colors = (Color::of(&tile.a)?, Color::of(&tile.b)?, Color::of(&tile.c)?, Color::of(&tile.d)?);
    PUZZLE_TILES_6V
        .iter()
        .find(|t| (t.0, t.1, t.2, t.3) == colors)
        .map(|t| (t.4, t.5))
}

/// Iterator over all nonzero six-vertex puzzle tiles.
pub fn puzzle_tiles_6v() -> impl Iterator<Item = (TileState, i64, u32)> {
    PUZZLE_TILES_6V
        .iter()
        .map(|&(a, b, c, d, sign, e)| (TileState::new(a.label(), b.label(), c.label(), d.label()), sign, e))
}

pub fn puzzle_tile_weight_6v(tile: &TileState) -> ParamPoly {
    puzzle_tile_weight_6v_at(tile, &ParamPoly::q())
}

pub fn puzzle_tile_weight_6v_at<R: Ring>(tile: &TileState, q: &R) -> R {
    match puzzle_tile_6v(tile) {
        Some((sign, e)) => R::from_i64(sign) * &q.pow(e),
        None => R::zero(),
    }
}

fn comb2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Higher-spin puzzle tile weight at numeric or symbolic `(q, s)`.
///
/// Labels are rank 2 `(red, blue)`; the weight vanishes unless
/// `a1 + b1 = c1 + d1`, `a2 + d2 = b2 + c2`, `b1 <= b2` and `d1 <= d2`.
pub fn puzzle_tile_weight_hs_at<F: Field>(tile: &TileState, q: &F, s: &F) -> Result<F> {
    tile.require_rank(2)?;
    let [a1, a2, b1, b2, c1, c2, d1, d2] = [&tile.a, &tile.b, &tile.c, &tile.d]
        .map(|l| [i64::from(l.get(0)), i64::from(l.get(1))])
        .concat()
        .try_into()
        .expect("eight coordinates");
    if a1 + b1 != c1 + d1 || a2 + d2 != b2 + c2 || b1 > b2 || d1 > d2 {
        return Ok(F::zero());
    }
    let s2 = s.clone() * s;
    let poch = |a: &F, k: i64| q_pochhammer(a, q, k).expect("nonnegative index");
    let inv = |v: F, what: &str| -> Result<F> {
        if v.is_zero() {
            Err(Error::Pole(format!("puzzle tile weight: {what} vanishes")))
        } else {
            v.try_inv()
        }
    };

    let mut total = F::zero();
    for p1 in 0..=b1.min(c1) {
        for p2 in 0..=c2 {
            let e = c1 + c2 - p1 - p2 - d2 + d1;
            if e < 0 {
                continue;
            }
            let sign = if p1 % 2 == 0 { F::one() } else { -F::one() };
            let mut t = sign * &q.powi((d1 - d2) * (c2 - p2) + comb2(b2 - b1 + p1))?;
            t = t * &q_binomial_value(c1 + d1 - p1, c1 - p1, q) * &q_binomial_value(b1, p1, q);
            if t.is_zero() {
                continue;
            }
            let mut num = F::one();
            for i in 1..=p1 + p2 {
                num = num * &(q.clone() - &(s2.clone() * &q.pow((i - 1) as u32)));
            }
            t = t * &num * &inv(poch(&s2, p1 + p2 + b2 - b1), "(s^2;q)")?;
            let mut num = F::one();
            let s2qd2 = s2.clone() * &q.pow(d2 as u32);
            for i in 1..=c2 - p2 {
                num = num * &(s2qd2.clone() - &q.pow(i as u32));
            }
            t = t * &num * &inv(poch(q, c2 - p2), "(q;q)")?;
            t = t * &poch(q, c1 + c2 - p1 - p2) * &inv(poch(q, e), "(q;q)")?;
            let s2qb2 = s2.clone() * &q.pow(b2 as u32);
            t = t * &poch(&s2qb2, p2) * &inv(poch(q, p2), "(q;q)")?;
            total = total + t;
        }
    }
    Ok(total)
}

/// Higher-spin puzzle tile weight as a rational function of `q` and `s`.
pub fn puzzle_tile_weight_hs(tile: &TileState) -> Result<ParamRatFunc> {
    puzzle_tile_weight_hs_at(tile, &ParamRatFunc::q(), &ParamRatFunc::s())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn six_vertex_table_has_fifteen_conserving_tiles() {
        let colors = [Color::White, Color::Red, Color::Blue];
        let mut conserving = 0;
        for a in colors {
            for b in colors {
                for c in colors {
                    for d in colors {
                        let t = TileState::new(a.label(), b.label(), c.label(), d.label());
                        if t.conserves() {
                            conserving += 1;
                        } else {
                            assert!(puzzle_tile_6v(&t).is_none());
                        }
                    }
                }
            }
        }
        assert_eq!(conserving, 15);
        assert_eq!(puzzle_tiles_6v().count(), 12);
    }

    #[test]
    fn crossing_weights() {
        use Color::*;
        let t = |a: Color, b: Color, c: Color, d: Color| TileState::new(a.label(), b.label(), c.label(), d.label());
        assert!(puzzle_tile_weight_6v(&t(White, White, White, White)).is_zero());
        assert!(puzzle_tile_weight_6v(&t(Red, Red, Red, Red)).is_zero());
        assert_eq!(puzzle_tile_weight_6v(&t(Red, Blue, Red, Blue)), ParamPoly::from(1));
        assert_eq!(puzzle_tile_weight_6v(&t(Blue, Red, Blue, Red)), ParamPoly::q());
        assert_eq!(puzzle_tile_weight_6v(&t(Blue, Red, Red, Blue)), -ParamPoly::q());
    }

    #[test]
    fn pure_vertical_blue_vanishes() {
        for k in 1..=4 {
            let t = TileState::new((0, k), (0, 0), (0, k), (0, 0));
            assert!(puzzle_tile_weight_hs(&t).unwrap().is_zero(), "k = {k}");
        }
    }

    #[test]
    fn twisted_conservation_gates() {
        let t = TileState::new((1, 0), (0, 0), (0, 0), (0, 0));
        assert!(puzzle_tile_weight_hs(&t).unwrap().is_zero());
        let t = TileState::new((0, 0), (1, 0), (1, 0), (0, 0));
        assert!(puzzle_tile_weight_hs(&t).unwrap().is_zero(), "b1 > b2");
    }

    #[test]
    fn higher_spin_support_matches_six_vertex_table() {
        use Color::*;
        let vertical = |c: Color| match c {
            White => EdgeLabel::pair(0, 0),
            Red => EdgeLabel::pair(1, 0),
            Blue => EdgeLabel::pair(0, 1),
        };
        let horizontal = |c: Color| match c {
            White => EdgeLabel::pair(0, 1),
            Red => EdgeLabel::pair(1, 1),
            Blue => EdgeLabel::pair(0, 0),
        };
        let colors = [White, Red, Blue];
        let mut mismatches = Vec::new();
        for a in colors {
            for b in colors {
                for c in colors {
                    for d in colors {
                        let six = TileState::new(a.label(), b.label(), c.label(), d.label());
                        let t = TileState::new(vertical(a), horizontal(b), vertical(c), horizontal(d));
                        if puzzle_tile_weight_hs(&t).unwrap().is_zero() != puzzle_tile_6v(&six).is_none() {
                            mismatches.push(format!("{a}{b}{c}{d}"));
                        }
                    }
                }
            }
        }
        // two crossing red paths are only allowed with higher spin
        assert_eq!(mismatches, ["RRRR"]);
    }
}
