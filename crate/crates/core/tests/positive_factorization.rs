mod common;

use common::{genus2, slope};
use dehn_core::curve_calculus::{classify_pair, geometric_intersection, PairTag};
use dehn_core::positive_factorization::*;
use dehn_core::surface_model::genus2_waist;
use dehn_core::twist_engine::{apply_word, TwistWord};
use dehn_core::{build_preset, Error};
use proptest::prelude::*;

fn pants_word(sys: &dehn_core::PantsSystem, n: &[i64]) -> TwistWord {
    let mut w = TwistWord::new();
    for (a, &e) in sys.interior_curves().iter().zip(n) {
        if e != 0 {
            w = w.then(a, e as i32).unwrap();
        }
    }
    w
}

/// Every invariant of a factorization of `f`.
fn check_result(f: &TwistWord, sys: &dehn_core::PantsSystem, r: &FactorizationResult) {
    assert!(r.p.is_positive());
    assert!(r.certificate.passed);
    assert!(check_factorization(f, &r.p, &r.q_exponents, sys).unwrap());
    // the same check, spelled out: q p agrees with f on the filling system
    let qp = r.p.compose(&r.q_word(sys).unwrap()).unwrap();
    for c in sys.filling_system() {
        let c = c.oriented();
        assert!(apply_word(&qp, &apply_word(&f.inverse(), &c).unwrap()).unwrap().same_oriented(&c));
    }
    for s in &r.step_log {
        assert!(s.within_budget, "{s:?}");
        assert!(s.letters() <= s.intersection + STEP_OVERHEAD);
    }
}

#[test]
fn matching_a_curve_met_once() {
    let (_, sys) = genus2();
    let gens = common::generators(&sys);
    let a = &sys.pants_curves[0];
    let a_prime = gens.iter().find(|c| geometric_intersection(a, c).unwrap() == 1).unwrap();
    let w = match_curve(a_prime, a).unwrap();
    assert_eq!(w.len(), 2);
    assert!(w.is_positive());
    assert!(apply_word(&w, a_prime).unwrap().isotopic(a));
    assert!(match_curve(a, a).unwrap().is_empty());
}

#[test]
fn matching_disjoint_handles_through_a_connector() {
    let (_, sys) = genus2();
    let (a, a_prime) = (&sys.pants_curves[0], &sys.pants_curves[1]);
    let c = find_connector_curve(a, a_prime).unwrap();
    assert_eq!(geometric_intersection(&c, a).unwrap(), 1);
    assert_eq!(geometric_intersection(&c, a_prime).unwrap(), 1);
    let w = match_curve(a_prime, a).unwrap();
    assert_eq!(w.len(), 4);
    assert!(w.letters[0].0.isotopic(&w.letters[3].0));
    assert!(apply_word(&w, a_prime).unwrap().isotopic(a));
}

#[test]
fn connectors_for_two_zero_pairs() {
    let (s, sys) = genus2();
    let (a, b) = (&sys.pants_curves[0], &sys.dual_curves[0]);
    assert_eq!(classify_pair(a, b).unwrap().tag, PairTag::TwoZero);
    if !dehn_core::surface_model::is_separating(&s, b).unwrap() {
        let c = find_connector_curve(a, b).unwrap();
        assert_eq!(geometric_intersection(&c, a).unwrap(), 1);
        assert_eq!(geometric_intersection(&c, b).unwrap(), 1);
    }
    let waist = genus2_waist().unwrap();
    assert!(matches!(find_connector_curve(&waist, a), Err(Error::Precondition(_))));
}

#[test]
fn orientation_fix_on_the_torus() {
    let (a, b) = (slope(1, 0), slope(0, 1));
    let w = fix_orientation(&a, &b).unwrap();
    assert_eq!(w.len(), 6);
    for c in [&a, &b] {
        let img = apply_word(&w, c).unwrap();
        assert!(img.same_oriented(&c.reversed()));
        assert!(img.isotopic(c));
        let twice = apply_word(&w.compose(&w).unwrap(), c).unwrap();
        assert!(twice.same_oriented(c));
    }
    assert!(fix_orientation(&a, &slope(1, 2)).is_err());
}

#[test]
fn empty_word() {
    let (_, sys) = genus2();
    let r = factorize(&TwistWord::new(), &sys).unwrap();
    assert!(r.p.is_empty());
    assert_eq!(r.q_exponents, vec![0, 0, 0]);
    check_result(&TwistWord::new(), &sys, &r);
}

#[test]
fn inverse_pants_twist() {
    let (_, sys) = genus2();
    let f = TwistWord::letter(&sys.pants_curves[0], -1).unwrap();
    let r = factorize(&f, &sys).unwrap();
    assert_eq!(r.q_exponents, vec![-1, 0, 0]);
    check_result(&f, &sys, &r);
}

#[test]
fn random_words_factorize() {
    let (_, sys) = genus2();
    let mut rng = common::rng(21);
    for len in 1..=4 {
        let f = common::random_word(&sys, &mut rng, len);
        let r = factorize(&f, &sys).unwrap();
        check_result(&f, &sys, &r);
    }
}

#[test]
fn boundary_presets_factorize() {
    for name in ["one_holed_torus", "four_holed_sphere"] {
        let (_, sys) = build_preset(name).unwrap();
        let mut rng = common::rng(4);
        for len in 1..=3 {
            let f = common::random_word(&sys, &mut rng, len);
            let r = factorize(&f, &sys).unwrap();
            check_result(&f, &sys, &r);
        }
    }
}

#[test]
fn tampered_results_are_rejected() {
    let (_, sys) = genus2();
    let f = TwistWord::letter(&sys.dual_curves[1], -1).unwrap();
    let r = factorize(&f, &sys).unwrap();
    assert!(check_factorization(&f, &r.p, &r.q_exponents, &sys).unwrap());
    let mut q = r.q_exponents.clone();
    q[1] += 1;
    assert!(!check_factorization(&f, &r.p, &q, &sys).unwrap());
    assert!(!check_factorization(&f, &r.p.inverse(), &r.q_exponents, &sys).unwrap() || r.p.is_empty());
    assert!(check_factorization(&f, &r.p, &[0], &sys).is_err());
}

#[test]
fn exponent_examples() {
    let (_, sys) = genus2();
    assert_eq!(solve_pants_exponents(&TwistWord::new(), &sys).unwrap(), vec![0, 0, 0]);
    assert_eq!(solve_pants_exponents(&pants_word(&sys, &[3, 0, 0]), &sys).unwrap(), vec![3, 0, 0]);
    assert_eq!(solve_pants_exponents(&pants_word(&sys, &[-2, 0, 5]), &sys).unwrap(), vec![-2, 0, 5]);
    let moved = TwistWord::letter(&sys.dual_curves[0], 1).unwrap();
    assert!(solve_pants_exponents(&moved, &sys).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exponents_round_trip(n in proptest::collection::vec(-10i64..=10, 3)) {
        let (_, sys) = genus2();
        prop_assert_eq!(solve_pants_exponents(&pants_word(&sys, &n), &sys).unwrap(), n);
    }
}
