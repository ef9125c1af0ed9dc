mod common;

use common::{genus2, slope};
use dehn_core::curve_calculus::{algebraic_intersection, classify_pair, geometric_intersection, intersection_pattern, PairTag};
use dehn_core::lickorish_reduction::{find_reduction_curve, reduce_pair};
use dehn_core::twist_engine::{apply_twist, apply_word};
use dehn_core::{EmbeddedCurve, Error};
use proptest::prelude::*;

/// First pool pair whose signs along `a` satisfy `want`.
fn find_pair(want: impl Fn(&[i32]) -> bool) -> (EmbeddedCurve, EmbeddedCurve) {
    let (_, sys) = genus2();
    let gens = common::generators(&sys);
    let mut rng = common::rng(3);
    for _ in 0..2000 {
        let a = common::random_curve(&gens, &mut rng, 1);
        let b = common::random_curve(&gens, &mut rng, 2);
        if a.isotopic(&b) {
            continue;
        }
        let signs: Vec<i32> = intersection_pattern(&a, &b).unwrap().along_a.iter().map(|p| p.1).collect();
        if want(&signs) {
            return (a, b);
        }
    }
    panic!("no pair with the requested pattern");
}

/// Checks every postcondition of one reduction step.
fn check_step(a: &EmbeddedCurve, b: &EmbeddedCurve, c: &EmbeddedCurve) -> usize {
    let before = geometric_intersection(a, b).unwrap();
    let img = apply_twist(c, 1, b).unwrap();
    let after = geometric_intersection(a, &img).unwrap();
    assert!(after < before, "{after} ≥ {before}");
    assert!(c.length() <= a.length() + b.length() + 1e-9);
    assert!(img.length() <= 2.0 * a.length() + b.length() + 1e-9);
    after
}

#[test]
fn two_points_with_equal_signs() {
    let (a, b) = find_pair(|s| s.len() == 2 && s[0] == s[1]);
    let c = find_reduction_curve(&a, &b).unwrap();
    // the algebraic number ±2 moves by alg(a, c) alg(c, b) ∈ {0, ±1}, so
    // one crossing is the best a single twist can leave
    assert_eq!(check_step(&a, &b, &c), 1);
    let img = apply_twist(&c, 1, &b).unwrap();
    assert_eq!(algebraic_intersection(&a, &img).unwrap().abs(), 1);
    assert_eq!(
        algebraic_intersection(&a, &img).unwrap(),
        algebraic_intersection(&a, &b).unwrap()
            + algebraic_intersection(&a, &c.oriented()).unwrap() * algebraic_intersection(&c.oriented(), &b).unwrap()
    );
}

#[test]
fn three_alternating_points() {
    let (a, b) = find_pair(|s| s.len() == 3 && s[0] != s[1] && s[1] != s[2]);
    let c = find_reduction_curve(&a, &b).unwrap();
    assert!(check_step(&a, &b, &c) <= 2);
}

#[test]
fn terminal_pairs_are_refused() {
    let err = find_reduction_curve(&slope(1, 0), &slope(0, 1)).unwrap_err();
    assert!(matches!(err, Error::Terminal(_)), "{err}");
}

#[test]
fn disjoint_pairs_need_no_twist() {
    let (_, sys) = genus2();
    let r = reduce_pair(&sys.pants_curves[0], &sys.pants_curves[2]).unwrap();
    assert!(r.word.is_empty());
    assert_eq!(r.class.tag, PairTag::Disjoint);
}

#[test]
fn torus_slope_one_two() {
    let (a, b) = (slope(1, 0), slope(1, 2));
    let r = reduce_pair(&a, &b).unwrap();
    assert_eq!(r.word.len(), 1);
    assert!(r.word.is_positive());
    assert!(r.class.count <= 1);
    assert_eq!(r.steps[0].before, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descent(seed in any::<u64>()) {
        let (_, sys) = genus2();
        let gens = common::generators(&sys);
        let mut rng = common::rng(seed);
        let (a, b, i) = common::random_pair(&gens, &mut rng, 2, 0, 12);
        let r = reduce_pair(&a, &b).unwrap();
        prop_assert!(r.word.len() <= i);
        prop_assert!(r.word.letters.iter().all(|(_, e)| *e == 1));
        let mut prev = i;
        for st in &r.steps {
            prop_assert_eq!(st.before, prev);
            prop_assert!(st.after < st.before);
            prev = st.after;
        }
        prop_assert!(r.class.is_terminal());
        prop_assert_eq!(r.class, classify_pair(&a, &r.b_final).unwrap());
        prop_assert!(apply_word(&r.word, &b).unwrap().same_oriented(&r.b_final));
        for (c, _) in &r.word.letters {
            prop_assert!(c.itinerary_len() <= a.itinerary_len() + b.itinerary_len() + 8);
        }
    }
}
