//! Seeded random draws of exact sample points.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::ExactScalar;

pub use rand::SeedableRng;

/// Deterministic generator used throughout the crate.
pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

/// Largest absolute numerator or denominator drawn.
pub const HEIGHT: i64 = 19;

fn nonzero_int<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=HEIGHT);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `p/q` with `p, q` uniform in `[-19, 19] \ {0}`.
pub fn random_rational<R: Rng>(rng: &mut R) -> ExactScalar {
    ExactScalar::ratio(nonzero_int(rng), nonzero_int(rng))
}

/// A random rational different from `0`, `1` and `-1`.
pub fn random_generic_q<R: Rng>(rng: &mut R) -> ExactScalar {
    loop {
        let q = random_rational(rng);
        if q.abs() != ExactScalar::from(1) {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_nonzero() {
        let a: Vec<_> = (0..20).map({
            let mut r = seeded(5);
            move |_| random_rational(&mut r)
        }).collect();
        let b: Vec<_> = (0..20).map({
            let mut r = seeded(5);
            move |_| random_rational(&mut r)
        }).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|v| !num_traits::Zero::is_zero(v)));
    }
}
