//! Fixtures shared by the benchmarks.

use spinhl_core::sampling::seeded;
use spinhl_core::{Composition, EvalPoint};

pub fn comp(s: &str) -> Composition {
    s.parse().expect("fixture composition")
}

/// (l, w, m) for the two small six-vertex products.
pub fn six_vertex_boundaries() -> Vec<(Composition, Composition, Composition)> {
    vec![(comp("101"), comp("010"), comp("01000")), (comp("1100"), comp("0000"), comp("1100"))]
}

/// (l, m) for the higher-spin product with three puzzles.
pub fn spin_hl_boundary() -> (Composition, Composition) {
    (comp("1,2,0"), comp("2,1,0,0"))
}

/// A reproducible generic point in `n` variables.
pub fn point(n: usize) -> EvalPoint {
    EvalPoint::random(&mut seeded(11), n)
}
