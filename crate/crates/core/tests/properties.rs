use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use spinhl_core::algebra::{q_binomial, q_binomial_coeffs, q_binomial_value};
use spinhl_core::lattice::{enumerate_configs, partition_function};
use spinhl_core::symmetric::{spin_hl_f, wavefunction_h_at};
use spinhl_core::weights::{general_weight, six_vertex_weight, spin_hl_weight};
use spinhl_core::{
    BoundarySpec, Composition, EdgeLabel, EvalPoint, ExactScalar, Field, GridSpec, Kernel, ParamPoly, ParamRatFunc,
    SpinParams, TileState,
};

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-19i64..=19, 1i64..=19).prop_map(|(p, q)| ExactScalar::ratio(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = ExactScalar> {
    rational().prop_filter("nonzero", |v| !v.is_zero())
}

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5)
        .prop_map(|t| ParamPoly::from_terms(t.into_iter().map(|(a, b, c)| (a, b, ExactScalar::from(c)))))
}

fn ratfunc() -> impl Strategy<Value = ParamRatFunc> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| ParamRatFunc::new(n, d).expect("nonzero denominator"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in ratfunc(), g in ratfunc(), q in rational(), s in rational()) {
        let (Ok(fv), Ok(gv)) = (f.evaluate(&q, &s), g.evaluate(&q, &s)) else { return Ok(()) };
        prop_assert_eq!((f.clone() * &g).evaluate(&q, &s).unwrap(), fv.clone() * &gv);
        if let Ok(sum) = (f + g).evaluate(&q, &s) {
            prop_assert_eq!(sum, fv + gv);
        }
    }

    #[test]
    fn canonical_form_is_stable(n in poly(), d in poly(), g in poly()) {
        prop_assume!(!d.is_zero() && !g.is_zero());
        let f = ParamRatFunc::new(n.clone(), d.clone()).unwrap();
        prop_assert_eq!(f.normalized(), f.clone());
        prop_assert_eq!(f.normalized().normalized(), f.normalized());
        prop_assert_eq!(ParamRatFunc::new(n * &g, d * &g).unwrap(), f);
    }

    #[test]
    fn q_binomial_symmetry_and_classical_limit(a in 0i64..=12, b_frac in 0.0f64..=1.0) {
        let b = (a as f64 * b_frac).round() as i64;
        prop_assert_eq!(q_binomial(a, b), q_binomial(a, a - b));
        let coeffs = q_binomial_coeffs(a, b);
        prop_assert!(coeffs.iter().all(|c| c >= &BigInt::zero()));
        let at_one: BigInt = coeffs.iter().sum();
        let classical = (1..=b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - b + i) / BigInt::from(i));
        prop_assert_eq!(at_one, classical.clone());
        prop_assert_eq!(q_binomial_value(a, b, &ExactScalar::one()), ExactScalar::from_integer(classical));
    }

    #[test]
    fn six_vertex_is_the_unit_spin_weight(x in nonzero_rational(), y in nonzero_rational(), q in nonzero_rational()) {
        prop_assume!(x != y && q != ExactScalar::one());
        let unit = SpinParams::integer(1, 1, 1).unwrap();
        let arg = (q.clone() * &y).try_div(&x).unwrap();
        for bits in 0..16u32 {
            let [a, b, c, d] = [3, 2, 1, 0].map(|i| (bits >> i) & 1);
            let direct = six_vertex_weight(a, b, c, d, &x, &y, &q).unwrap();
            let tile = TileState::new(1 - a, 1 - b, 1 - c, 1 - d);
            let general = general_weight(&unit, &arg, &q, &ExactScalar::zero(), &tile).unwrap();
            prop_assert_eq!(direct, general, "tile {:?}", (a, b, c, d));
        }
    }

    #[test]
    fn spin_hl_is_the_complemented_spin_weight(t in nonzero_rational(), x in nonzero_rational(), spin in 1u32..=4) {
        let q = t.clone() * &t;
        let s = t.powi(-i64::from(spin)).unwrap();
        prop_assume!(q != ExactScalar::one() && x != s);
        let params = SpinParams::integer(spin, 1, 1).unwrap();
        let arg = (q.clone() * &s).try_div(&x).unwrap();
        for m in 0..=spin {
            for (a, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let Some(d) = (a + m).checked_sub(c).filter(|&d| d <= spin) else { continue };
                let direct = spin_hl_weight(a, m, c, d, &x, &s, &q).unwrap();
                let tile = TileState::new(1 - a, spin - m, 1 - c, spin - d);
                // the general formula has removable poles at x = q^j
                let Ok(mut general) = general_weight(&params, &arg, &q, &ExactScalar::zero(), &tile) else {
                    return Ok(());
                };
                if c == 1 {
                    general = -general.try_div(&s).unwrap();
                }
                prop_assert_eq!(direct, general, "tile {:?}", (a, m, c, d));
            }
        }
    }
}

/// Rank-one capacity-two kernel with a rapidity per cell.
#[derive(Debug)]
struct CellKernel {
    xs: Vec<Vec<ExactScalar>>,
    q: ExactScalar,
}

impl Kernel for CellKernel {
    type Weight = ExactScalar;

    fn outputs(&self, a: &EdgeLabel, b: &EdgeLabel) -> Vec<(EdgeLabel, EdgeLabel)> {
        let total = a.get(0) + b.get(0);
        (0..=total.min(2))
            .filter(|&c| total - c <= 2)
            .map(|c| (EdgeLabel::single(c), EdgeLabel::single(total - c)))
            .collect()
    }

    fn weight(&self, row: usize, col: usize, tile: &TileState) -> spinhl_core::Result<ExactScalar> {
        let params = SpinParams::integer(2, 2, 1)?;
        general_weight(&params, &self.xs[row][col], &self.q, &ExactScalar::zero(), tile)
    }
}

/// A grid, kernel and boundary read off one random configuration, so the
/// boundary always admits at least one filling.
fn grid_case() -> impl Strategy<Value = (GridSpec, BoundarySpec, CellKernel)> {
    (1usize..=3, 1usize..=3)
        .prop_filter("at most nine cells", |(r, c)| r * c <= 9)
        .prop_flat_map(|(rows, cols)| {
            (
                Just((rows, cols)),
                prop::collection::vec(0u32..=2, rows),
                prop::collection::vec(0u32..=2, cols),
                prop::collection::vec(any::<u8>(), rows * cols),
                prop::collection::vec(prop::collection::vec(nonzero_rational(), cols), rows),
                nonzero_rational().prop_filter("generic q", |q| q.abs() != ExactScalar::one()),
            )
        })
        .prop_map(|((rows, cols), left, bottom, choices, xs, q)| {
            let kernel = CellKernel { xs, q };
            let mut horizontal: Vec<EdgeLabel> = left.iter().map(|&v| EdgeLabel::single(v)).collect();
            let mut top = Vec::with_capacity(cols);
            for col in 0..cols {
                let mut vertical = EdgeLabel::single(bottom[col]);
                for row in (0..rows).rev() {
                    let outs = kernel.outputs(&vertical, &horizontal[row]);
                    let (c, d) = outs[usize::from(choices[row * cols + col]) % outs.len()].clone();
                    vertical = c;
                    horizontal[row] = d;
                }
                top.push(vertical);
            }
            let boundary = BoundarySpec::fixed(
                left.iter().map(|&v| EdgeLabel::single(v)).collect(),
                horizontal,
                bottom.iter().map(|&v| EdgeLabel::single(v)).collect(),
                top,
            );
            (GridSpec::new(rows, cols).unwrap(), boundary, kernel)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transfer_dp_equals_enumeration((grid, boundary, kernel) in grid_case()) {
        let (Ok(z), Ok(configs)) = (
            partition_function(&grid, &boundary, &kernel),
            enumerate_configs(&grid, &boundary, &kernel),
        ) else {
            return Ok(());
        };
        prop_assert!(!configs.is_empty());
        let sum = configs.iter().fold(ExactScalar::zero(), |acc, (_, w)| acc + w);
        prop_assert_eq!(z, sum);
    }

    #[test]
    fn wave_function_is_symmetric(
        xs in prop::collection::vec(nonzero_rational(), 3),
        q in nonzero_rational(),
        bits in 0u32..32,
        shift in 1usize..3,
    ) {
        prop_assume!(q.abs() != ExactScalar::one());
        let m = Composition::new((0..5).map(|i| (bits >> i) & 1).collect());
        let n = m.size() as usize;
        prop_assume!(n <= 3);
        let xs = &xs[..n];
        let zeros = Composition::zeros(m.len());
        let mut rotated = xs.to_vec();
        if n > 0 {
            rotated.rotate_left(shift % n);
        }
        let (Ok(a), Ok(b)) = (wavefunction_h_at(&m, &zeros, xs, &q), wavefunction_h_at(&m, &zeros, &rotated, &q)) else {
            return Ok(());
        };
        prop_assert_eq!(a, b);
    }

    #[test]
    fn spin_hl_is_symmetric_and_pads(
        xs in prop::collection::vec(nonzero_rational(), 3),
        q in nonzero_rational(),
        s in nonzero_rational(),
        parts in prop::collection::vec(0u32..=2, 1..=3),
    ) {
        let m = Composition::new(parts);
        let n = m.size() as usize;
        prop_assume!((1..=3).contains(&n));
        let point = EvalPoint::new(xs[..n].to_vec(), q, s);
        prop_assume!(point.validate().is_ok());
        let mut swapped = point.clone();
        swapped.xs.reverse();
        let (Ok(a), Ok(b)) = (spin_hl_f(&m, &point), spin_hl_f(&m, &swapped)) else { return Ok(()) };
        prop_assert_eq!(&a, &b);
        let padded = m.padded(m.len() + 2).unwrap();
        prop_assert_eq!(spin_hl_f(&padded, &point).unwrap(), a);
    }
}
