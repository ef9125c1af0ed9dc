mod common;

use common::{genus2, slope, torus};
use dehn_core::curve_calculus::geometric_intersection;
use dehn_core::surface_model::{
    cut_along, genus2_waist, homology_class, is_separating, CurveJson, SurfaceJson,
};
use dehn_core::twist_engine::apply_twist;
use dehn_core::{build_preset, Error};
use proptest::prelude::*;

const PRESETS: [&str; 4] = ["torus", "one_holed_torus", "four_holed_sphere", "genus2_closed"];

#[test]
fn euler_characteristic_matches_topology() {
    for name in PRESETS {
        let (s, _) = build_preset(name).unwrap();
        let expect = 2 - 2 * s.genus as i64 - s.boundary_count as i64;
        assert_eq!(s.euler_characteristic(), expect, "{name}");
        s.validate().unwrap();
    }
}

#[test]
fn norms_of_presets() {
    let norm = |n: &str| build_preset(n).unwrap().0.norm();
    assert_eq!(norm("torus"), 0);
    assert_eq!(norm("one_holed_torus"), 1);
    assert_eq!(norm("four_holed_sphere"), 1);
    assert_eq!(norm("genus2_closed"), 3);
    assert!(matches!(build_preset("klein_bottle"), Err(Error::UnknownPreset(_))));
}

#[test]
fn genus_two_pants_system() {
    let (s, sys) = genus2();
    let a = sys.interior_curves();
    assert_eq!(a.len(), 3);
    for i in 0..3 {
        assert!(!is_separating(&s, &a[i]).unwrap());
        for j in 0..3 {
            assert_eq!(geometric_intersection(&a[i], &a[j]).unwrap(), 0);
        }
    }
}

#[test]
fn pants_curves_are_listed_non_separating_first() {
    for name in PRESETS {
        let (s, sys) = build_preset(name).unwrap();
        let seps: Vec<bool> =
            sys.interior_curves().iter().map(|c| is_separating(&s, c).unwrap()).collect();
        let first_sep = seps.iter().position(|&x| x).unwrap_or(seps.len());
        assert!(seps[first_sep..].iter().all(|&x| x), "{name}: {seps:?}");
    }
}

#[test]
fn homology_examples() {
    let t = torus();
    assert_eq!(homology_class(&t, &slope(1, 0)).unwrap(), vec![1, 0]);
    let img = apply_twist(&slope(1, 0), 1, &slope(0, 1)).unwrap();
    assert_eq!(homology_class(&t, &img).unwrap(), vec![1, 1]);

    let (s, _) = genus2();
    let waist = genus2_waist().unwrap().oriented();
    assert!(homology_class(&s, &waist).unwrap().iter().all(|&x| x == 0));
    assert!(matches!(homology_class(&s, &waist.unoriented()), Err(Error::Unoriented)));
}

#[test]
fn separating_examples() {
    let (s, sys) = genus2();
    assert!(!is_separating(&torus(), &slope(1, 0)).unwrap());
    assert!(is_separating(&s, &genus2_waist().unwrap()).unwrap());
    assert!(!is_separating(&s, &sys.pants_curves[0]).unwrap());
}

#[test]
fn cut_along_a_non_separating_curve() {
    let (s, sys) = genus2();
    let cut = cut_along(&s, &sys.pants_curves[0], &[]).unwrap();
    assert_eq!(cut.pieces.len(), 1);
    let p = &cut.pieces[0];
    assert_eq!((p.genus, p.boundary_count, p.norm()), (1, 2, 2));
}

#[test]
fn cut_along_the_waist() {
    let (s, _) = genus2();
    let cut = cut_along(&s, &genus2_waist().unwrap(), &[]).unwrap();
    assert_eq!(cut.pieces.len(), 2);
    for p in &cut.pieces {
        assert_eq!((p.genus, p.boundary_count, p.norm()), (1, 1, 1));
    }
}

#[test]
fn cut_rejects_crossing_registered_curves() {
    let (s, sys) = genus2();
    let crossing = sys.dual_curves[0].clone();
    assert!(cut_along(&s, &sys.pants_curves[0], &[crossing]).is_err());
    let disjoint = sys.pants_curves[1].clone();
    let cut = cut_along(&s, &sys.pants_curves[0], &[disjoint]).unwrap();
    assert_eq!(cut.transfer, vec![0]);
}

#[test]
fn cutting_lowers_the_norm() {
    for name in ["one_holed_torus", "four_holed_sphere", "genus2_closed"] {
        let (s, sys) = build_preset(name).unwrap();
        let mut curves = sys.interior_curves().to_vec();
        if name == "genus2_closed" {
            curves.push(genus2_waist().unwrap());
        }
        for c in &curves {
            for p in cut_along(&s, c, &[]).unwrap().pieces {
                assert!(p.norm() < s.norm(), "{name}: piece of norm {}", p.norm());
                assert_eq!(p.euler_characteristic(), 2 - 2 * p.genus as i64 - p.boundary_count as i64);
            }
        }
    }
}

#[test]
fn json_round_trips() {
    for name in PRESETS {
        let (s, sys) = build_preset(name).unwrap();
        let j = SurfaceJson::from_surface(&s);
        let back: SurfaceJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        let t = back.to_surface().unwrap();
        assert_eq!((t.genus, t.boundary_count), (s.genus, s.boundary_count));
        assert_eq!(t.faces, s.faces);
        for c in sys.filling_system() {
            let cj = CurveJson::from_curve(&c).unwrap();
            let text = serde_json::to_string(&cj).unwrap();
            let (_, d) = serde_json::from_str::<CurveJson>(&text).unwrap().to_curve().unwrap();
            assert!(d.same_oriented(&c) || (!c.oriented && d.isotopic(&c)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_flips_under_reversal(p in -9i64..=9, q in -9i64..=9) {
        prop_assume!(common::gcd(p, q) == 1);
        let t = torus();
        let c = slope(p, q);
        prop_assert_eq!(homology_class(&t, &c).unwrap(), vec![p, q]);
        let r: Vec<i64> = homology_class(&t, &c.reversed()).unwrap();
        prop_assert_eq!(r, vec![-p, -q]);
    }

    #[test]
    fn random_genus_two_curves_flip_too(seed in any::<u64>()) {
        let (s, sys) = genus2();
        let gens = common::generators(&sys);
        let c = common::random_curve(&gens, &mut common::rng(seed), 2);
        let h = homology_class(&s, &c).unwrap();
        let r = homology_class(&s, &c.reversed()).unwrap();
        prop_assert!(h.iter().zip(&r).all(|(x, y)| x == &-y));
        if is_separating(&s, &c).unwrap() {
            prop_assert!(h.iter().all(|&x| x == 0));
        }
    }
}
