mod common;

use common::{genus2, slope, torus};
use dehn_core::curve_calculus::{algebraic_intersection, geometric_intersection};
use dehn_core::surface_model::homology_class;
use dehn_core::twist_engine::*;
use proptest::prelude::*;

fn coprime() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6).prop_filter("primitive", |&(p, q)| common::gcd(p, q) == 1)
}

#[test]
fn torus_convention() {
    let img = apply_twist(&slope(1, 0), 1, &slope(0, 1)).unwrap();
    assert!(img.same_oriented(&slope(1, 1)));
    let a = slope(2, 3);
    assert!(apply_twist(&a, 1, &a).unwrap().isotopic(&a));
    let back = apply_twist(&slope(1, 0), -1, &img).unwrap();
    assert!(back.same_oriented(&slope(0, 1)));
}

#[test]
fn torus_growth_example() {
    let img = apply_twist(&slope(1, 0), 3, &slope(0, 1)).unwrap();
    assert_eq!(geometric_intersection(&img, &slope(0, 1)).unwrap(), 3);
}

#[test]
fn words_and_inverses() {
    let (_, sys) = genus2();
    let c = sys.dual_curves[1].oriented();
    assert!(apply_word(&TwistWord::new(), &c).unwrap().same_oriented(&c));
    let w = common::random_word(&sys, &mut common::rng(5), 4);
    let round = w.compose(&w.inverse()).unwrap();
    assert!(apply_word(&round, &c).unwrap().same_oriented(&c));
    assert_eq!(round.len(), 8);
    assert!(!round.is_positive() || w.is_empty());
}

#[test]
fn braid_relation() {
    let (_, sys) = genus2();
    let gens = common::generators(&sys);
    let mut tested = 0;
    for a in &gens {
        for b in &gens {
            if geometric_intersection(a, b).unwrap() != 1 {
                continue;
            }
            let w = TwistWord::letter(b, 1).unwrap().then(a, 1).unwrap();
            assert!(apply_word(&w, a).unwrap().isotopic(b));
            tested += 1;
        }
    }
    let w = TwistWord::letter(&slope(0, 1), 1).unwrap().then(&slope(1, 0), 1).unwrap();
    assert!(apply_word(&w, &slope(1, 0)).unwrap().isotopic(&slope(0, 1)));
    assert!(tested >= 10);
}

#[test]
fn action_on_the_pants_system() {
    let (_, sys) = genus2();
    let pants = sys.interior_curves();
    assert_eq!(act_on_system(&TwistWord::new(), pants).unwrap(), pants.to_vec());
    let da1 = TwistWord::letter(&pants[0], 1).unwrap();
    for (x, y) in act_on_system(&da1, pants).unwrap().iter().zip(pants) {
        assert!(x.isotopic(y));
    }
    let db1 = TwistWord::letter(&sys.dual_curves[0], 1).unwrap();
    let img = act_on_system(&db1, pants).unwrap();
    let moved: Vec<bool> = img.iter().zip(pants).map(|(x, y)| !x.isotopic(y)).collect();
    assert_eq!(moved, vec![true, false, false]);
}

#[test]
fn identity_on_the_filling_system() {
    let (_, sys) = genus2();
    let f = sys.filling_system();
    let a1 = &f[0];
    assert!(is_identity_on_system(&TwistWord::new(), &f).unwrap());
    let w = TwistWord::letter(a1, 1).unwrap().then(a1, -1).unwrap();
    assert!(is_identity_on_system(&w, &f).unwrap());
    assert!(!is_identity_on_system(&TwistWord::letter(a1, 1).unwrap(), &f).unwrap());
    let b1 = &sys.dual_curves[0];
    let i = geometric_intersection(a1, b1).unwrap();
    assert_eq!(geometric_intersection(&apply_twist(a1, 1, b1).unwrap(), b1).unwrap(), i * i);
}

#[test]
fn word_json_round_trip() {
    let (_, sys) = genus2();
    let text = r#"{"format": 1, "surface": "genus2",
        "letters": [{"pants": 0, "exp": -1}, {"dual": 2, "exp": 2}]}"#;
    let w: WordJson = serde_json::from_str(text).unwrap();
    let word = w.to_word().unwrap();
    let expect = TwistWord::letter(&sys.pants_curves[0], -1).unwrap().then(&sys.dual_curves[2], 2).unwrap();
    assert_eq!(word, expect);
    let again = WordJson::from_word("genus2_closed", &word);
    let text = serde_json::to_string(&again).unwrap();
    assert_eq!(serde_json::from_str::<WordJson>(&text).unwrap().to_word().unwrap(), word);

    let torus_word: WordJson =
        serde_json::from_str(r#"{"format": 1, "surface": "torus", "letters": [{"slope": [1, 0], "exp": 1}]}"#).unwrap();
    assert_eq!(torus_word.to_word().unwrap().len(), 1);
    for bad in [
        r#"{"format": 1, "surface": "torus", "letters": [{"slope": [2, 0], "exp": 1}]}"#,
        r#"{"format": 2, "surface": "torus", "letters": []}"#,
        r#"{"format": 1, "surface": "genus2", "letters": [{"pants": 0, "dual": 1, "exp": 1}]}"#,
        r#"{"format": 1, "surface": "genus2", "letters": [{"pants": 7, "exp": 1}]}"#,
        r#"{"format": 1, "surface": "genus2", "letters": [{"pants": 0, "exp": 0}]}"#,
    ] {
        let w: WordJson = serde_json::from_str(bad).unwrap();
        assert!(w.to_word().is_err(), "{bad}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// On the torus a curve is its slope, and `D_a^n(v) = v + n (a × v) a`.
    #[test]
    fn torus_twists_match_the_linear_action((p, q) in coprime(), (r, s) in coprime(), n in -3i32..=3) {
        prop_assume!(n != 0);
        let img = apply_twist(&slope(p, q), n, &slope(r, s)).unwrap();
        let k = n as i64 * (p * s - q * r);
        prop_assert!(img.same_oriented(&slope(r + k * p, s + k * q)));
        prop_assert_eq!(homology_class(&torus(), &img).unwrap(), vec![r + k * p, s + k * q]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn twists_act_on_homology_by_transvections(seed in any::<u64>(), n in -3i32..=3) {
        prop_assume!(n != 0);
        let (s, sys) = genus2();
        let gens = common::generators(&sys);
        let mut rng = common::rng(seed);
        let a = common::random_curve(&gens, &mut rng, 1);
        let b = common::random_curve(&gens, &mut rng, 1);
        let img = apply_twist(&a, n, &b).unwrap();
        let k = n as i64 * algebraic_intersection(&a, &b).unwrap();
        let ha = homology_class(&s, &a).unwrap();
        let expect: Vec<i64> =
            homology_class(&s, &b).unwrap().iter().zip(&ha).map(|(x, y)| x + k * y).collect();
        prop_assert_eq!(homology_class(&s, &img).unwrap(), expect);
    }

    #[test]
    fn twist_laws(seed in any::<u64>(), n in -3i32..=3) {
        prop_assume!(n != 0);
        let (_, sys) = genus2();
        let gens = common::generators(&sys);
        let mut rng = common::rng(seed);
        let (a, b, i) = common::random_pair(&gens, &mut rng, 1, 0, 6);
        let img = apply_twist(&a, n, &b).unwrap();
        prop_assert!(apply_twist(&a, -n, &img).unwrap().same_oriented(&b));
        prop_assert_eq!(geometric_intersection(&img, &a).unwrap(), i);
        // the crossing count with b grows like |n| I(a, b)²
        if !img.isotopic(&b) {
            prop_assert_eq!(geometric_intersection(&img, &b).unwrap(), n.unsigned_abs() as usize * i * i);
        }
    }

    #[test]
    fn naturality(seed in any::<u64>(), n in -2i32..=2) {
        prop_assume!(n != 0);
        let (_, sys) = genus2();
        let gens = common::generators(&sys);
        let mut rng = common::rng(seed);
        let (a, b, _) = common::random_pair(&gens, &mut rng, 1, 0, 4);
        let w = common::random_word(&sys, &mut rng, 2);
        let lhs = apply_word(&w, &apply_twist(&a, n, &b).unwrap()).unwrap();
        let rhs = apply_twist(&apply_word(&w, &a).unwrap(), n, &apply_word(&w, &b).unwrap()).unwrap();
        prop_assert!(lhs.same_oriented(&rhs));
    }
}
