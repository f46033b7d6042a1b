use num_traits::{One, Zero};
use spinhl_core::puzzles::*;
use spinhl_core::{Composition, ExactScalar, Field, ParamPoly, ParamRatFunc, Ring};

fn c(s: &str) -> Composition {
    s.parse().unwrap()
}

/// `1 - q^dq s^ds`
fn om(dq: u32, ds: u32) -> ParamRatFunc {
    ParamRatFunc::from_poly(ParamPoly::one() - &ParamPoly::monomial(dq, ds, ExactScalar::one()))
}

fn printed_contributions() -> Vec<ParamRatFunc> {
    let s = ParamRatFunc::s();
    let first = om(1, 0) * &om(2, 0).pow(2) * &s * &om(2, 2)
        * &(om(0, 2).pow(3) * &om(1, 2)).try_inv().unwrap();
    let second = om(1, 0).pow(2) * &om(2, 0) * &s * &om(2, 2)
        * &(om(0, 2).pow(3) * &om(1, 2)).try_inv().unwrap();
    let third = om(1, 0) * &om(2, 0).pow(2) * &s * &om(1, 2) * &om(0, 2).pow(4).try_inv().unwrap();
    vec![first, second, third]
}

#[test]
fn worked_higher_spin_example() {
    let (l, m, k) = (c("1,2,0"), c("2,1,0,0"), c("0,1,2,0"));
    let puzzles = puzzles_hs(&l, &m, &k).unwrap();
    assert_eq!(puzzles.len(), 3);
    let mut got: Vec<String> = puzzles.iter().map(|p| p.contribution.to_string()).collect();
    let mut want: Vec<String> = printed_contributions().iter().map(ToString::to_string).collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);

    let sc = structure_constant_hs(&l, &m, &k).unwrap();
    assert_eq!(sc.puzzle_count, 3);
    let total = printed_contributions().into_iter().fold(ParamRatFunc::zero(), |a, b| a + b);
    assert_eq!(sc.value(), total);
    assert_eq!(sc.s_power, 1);

    let (q, s) = (ExactScalar::ratio(1, 5), ExactScalar::ratio(1, 7));
    assert_eq!(structure_constant_hs_at(&l, &m, &k, &q, &s).unwrap(), total.evaluate(&q, &s).unwrap());
}

#[test]
fn worked_example_appears_in_expansion() {
    let (l, m) = (c("1,2,0"), c("2,1,0,0"));
    let terms = expand_hs(&l, &m, Some(4)).unwrap();
    let hit = terms.iter().find(|t| t.k == c("0,1,2,0")).expect("k present");
    let total = printed_contributions().into_iter().fold(ParamRatFunc::zero(), |a, b| a + b);
    assert_eq!(hit.value(), total);
    for t in &terms {
        assert_eq!(t.k.size(), 3);
    }
}

#[test]
fn second_worked_expansion() {
    let terms = expand_6v(&c("1100"), &c("0000"), &c("1100")).unwrap();
    let got: Vec<(String, ParamPoly)> = terms.iter().map(|t| (t.k.to_string(), t.coeff.clone())).collect();
    let q = |e: u32, sign: i64| ParamPoly::monomial(e, 0, ExactScalar::from(sign));
    assert_eq!(
        got,
        vec![
            ("(1,1,0,0)".to_string(), q(0, 1)),
            ("(1,0,1,0)".to_string(), q(1, -1)),
            ("(0,1,0,1)".to_string(), q(2, -1)),
            ("(0,0,1,1)".to_string(), q(3, 1)),
        ]
    );
}

#[test]
fn red_count_and_signs_on_second_example() {
    let (l, w, m) = (c("1100"), c("0000"), c("1100"));
    let want = expected_red_right_edge_count(&l, &w);
    for t in expand_6v(&l, &w, &m).unwrap() {
        let configs = puzzles_6v(&l, &w, &m, &t.k).unwrap();
        assert_eq!(configs.len(), t.puzzles);
        let signs: Vec<i8> = configs.iter().map(|(cfg, _)| puzzle_sign_6v(cfg)).collect();
        assert!(signs.windows(2).all(|p| p[0] == p[1]));
        for (cfg, _) in &configs {
            assert_eq!(red_right_edge_count(cfg) as i64, want);
        }
    }
}

#[test]
fn invalid_boundaries_are_rejected() {
    assert!(coeff_6v(&c("101"), &c("01"), &c("01000"), &c("01000")).is_err());
    assert!(coeff_6v(&c("101"), &c("010"), &c("11000"), &c("01000")).is_err());
    assert!(structure_constant_hs(&c("1,2"), &c("1"), &c("1")).is_err());
}
