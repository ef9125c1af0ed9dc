mod common;

use common::{genus2, slope};
use dehn_core::curve_calculus::*;
use dehn_core::surface_model::{genus2_waist, homology_class};
use dehn_core::twist_engine::apply_twist;
use dehn_core::EmbeddedCurve;
use proptest::prelude::*;

fn coprime() -> impl Strategy<Value = (i64, i64)> {
    (-10i64..=10, -10i64..=10).prop_filter("primitive", |&(p, q)| common::gcd(p, q) == 1)
}

/// The skew form `J` with `alg(u, v) = h(u)ᵀ J h(v)`, fitted by least
/// squares on the given curves and rounded.
fn fit_form(curves: &[EmbeddedCurve]) -> [[i64; 4]; 4] {
    let s = curves[0].surface().clone();
    let h: Vec<Vec<f64>> = curves
        .iter()
        .map(|c| homology_class(&s, c).unwrap().iter().map(|&x| x as f64).collect())
        .collect();
    let idx: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut ata = vec![vec![0.0; 6]; 6];
    let mut atb = vec![0.0; 6];
    for (x, u) in curves.iter().enumerate() {
        for (y, v) in curves.iter().enumerate() {
            let row: Vec<f64> =
                idx.iter().map(|&(i, j)| h[x][i] * h[y][j] - h[x][j] * h[y][i]).collect();
            let b = algebraic_intersection(u, v).unwrap() as f64;
            for r in 0..6 {
                atb[r] += row[r] * b;
                for c in 0..6 {
                    ata[r][c] += row[r] * row[c];
                }
            }
        }
    }
    // Gaussian elimination with partial pivoting
    for col in 0..6 {
        let piv = (col..6).max_by(|&a, &b| ata[a][col].abs().total_cmp(&ata[b][col].abs())).unwrap();
        ata.swap(col, piv);
        atb.swap(col, piv);
        for r in 0..6 {
            if r != col {
                let f = ata[r][col] / ata[col][col];
                for c in 0..6 {
                    ata[r][c] -= f * ata[col][c];
                }
                atb[r] -= f * atb[col];
            }
        }
    }
    let mut j = [[0i64; 4]; 4];
    for (k, &(a, b)) in idx.iter().enumerate() {
        let v = (atb[k] / ata[k][k]).round() as i64;
        j[a][b] = v;
        j[b][a] = -v;
    }
    j
}

fn form(j: &[[i64; 4]; 4], u: &[i64], v: &[i64]) -> i64 {
    (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| u[a] * j[a][b] * v[b]).sum()
}

#[test]
fn torus_examples() {
    assert_eq!(geometric_intersection(&slope(2, 1), &slope(1, 1)).unwrap(), 1);
    assert_eq!(geometric_intersection(&slope(1, 0), &slope(1, 0)).unwrap(), 0);
    let img = apply_twist(&slope(1, 0), 3, &slope(0, 1)).unwrap();
    assert_eq!(geometric_intersection(&img, &slope(0, 1)).unwrap(), 3);
    assert_eq!(algebraic_intersection(&slope(1, 0), &slope(0, 1)).unwrap(), 1);
    let a = slope(3, 2);
    assert_eq!(algebraic_intersection(&a, &a).unwrap(), 0);
}

#[test]
fn minimal_position_of_the_torus_basis() {
    let (a, b) = minimal_position(&slope(1, 0), &slope(0, 1)).unwrap();
    assert_eq!(geometric_intersection(&a, &b).unwrap(), 1);
    let p = intersection_pattern(&a, &b).unwrap();
    assert_eq!(p.along_a, vec![(0, 1)]);
    assert_eq!(classify_pair(&a, &b).unwrap(), PairClass { tag: PairTag::OnePoint, count: 1 });
}

#[test]
fn an_inserted_bigon_is_removed() {
    let (_, sys) = genus2();
    let gens = common::generators(&sys);
    let path = |c: &EmbeddedCurve| PathCurve::from_curve(c, 128).unwrap();
    let mut found = 0;
    for a in &gens {
        for b in gens.iter().filter(|b| !b.isotopic(a)) {
            let (pa, pb) = (path(a), path(b));
            let before = pa.crossing_count(&pb).unwrap();
            assert_eq!(before, geometric_intersection(a, b).unwrap());
            for i in 0..pa.exits().len() {
                for fwd in [true, false] {
                    let Ok(m) = pa.finger_move(i, &pb, fwd) else { continue };
                    let after = m.crossing_count(&pb).unwrap();
                    assert!(after + 2 >= before && after <= before + 2);
                    if after == before + 2 {
                        found += 1;
                        let (ta, tb) = minimal_position_paths(&m, &pb).unwrap();
                        assert!(ta.isotopic(a) && tb.isotopic(b));
                        assert_eq!(path(&ta).crossing_count(&path(&tb)).unwrap(), before);
                    }
                }
            }
        }
    }
    assert!(found > 0, "no finger move created a bigon");
}

#[test]
fn a_curve_misses_its_push_off() {
    let (_, sys) = genus2();
    let a = &sys.pants_curves[1];
    assert_eq!(geometric_intersection(a, &a.reversed()).unwrap(), 0);
    assert!(curves_isotopic(a, &a.reversed()).unwrap());
    assert!(!curves_isotopic(&slope(1, 0), &slope(0, 1)).unwrap());
    let twisted = apply_twist(a, 1, a).unwrap();
    assert!(curves_isotopic(a, &twisted).unwrap());
}

#[test]
fn genus_two_patterns() {
    let (_, sys) = genus2();
    let a = sys.pants_curves[0].oriented();
    let b = sys.dual_curves[0].oriented();
    let p = intersection_pattern(&a, &b).unwrap();
    let mut signs: Vec<i32> = p.along_a.iter().map(|x| x.1).collect();
    signs.sort();
    assert_eq!(signs, vec![-1, 1]);
    assert_eq!(classify_pair(&a, &b).unwrap(), PairClass { tag: PairTag::TwoZero, count: 2 });

    let a2 = sys.pants_curves[1].oriented();
    assert!(intersection_pattern(&a, &a2).unwrap().along_a.is_empty());
    assert_eq!(classify_pair(&a, &a2).unwrap().tag, PairTag::Disjoint);

    let waist = genus2_waist().unwrap().oriented();
    for c in sys.filling_system() {
        assert_eq!(algebraic_intersection(&waist, &c.oriented()).unwrap(), 0);
    }
}

#[test]
fn the_filling_system_fills() {
    let (_, sys) = genus2();
    let f = sys.filling_system();
    assert!(fills(&f).unwrap());
    assert!(!fills(sys.interior_curves()).unwrap());
    assert!(fills(&[slope(1, 0), slope(0, 1)]).unwrap());
    assert!(!fills(&[slope(1, 0)]).unwrap());
}

#[test]
fn algebraic_intersection_is_the_homology_form() {
    let (_, sys) = genus2();
    let gens: Vec<EmbeddedCurve> = common::generators(&sys).iter().map(|c| c.oriented()).collect();
    let j = fit_form(&gens);
    let s = gens[0].surface().clone();
    let mut rng = common::rng(11);
    for _ in 0..40 {
        let u = common::random_curve(&gens, &mut rng, 2);
        let v = common::random_curve(&gens, &mut rng, 2);
        let (hu, hv) = (homology_class(&s, &u).unwrap(), homology_class(&s, &v).unwrap());
        assert_eq!(algebraic_intersection(&u, &v).unwrap(), form(&j, &hu, &hv));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn torus_oracle((p, q) in coprime(), (r, s) in coprime()) {
        let (a, b) = (slope(p, q), slope(r, s));
        prop_assert_eq!(geometric_intersection(&a, &b).unwrap() as i64, (p * s - q * r).abs());
        prop_assert_eq!(algebraic_intersection(&a, &b).unwrap(), p * s - q * r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pair_invariants(seed in any::<u64>()) {
        let (_, sys) = genus2();
        let gens = common::generators(&sys);
        let mut rng = common::rng(seed);
        let a = common::random_curve(&gens, &mut rng, 2);
        let b = common::random_curve(&gens, &mut rng, 2);
        let i = geometric_intersection(&a, &b).unwrap();
        prop_assert_eq!(i, geometric_intersection(&b, &a).unwrap());
        let alg = algebraic_intersection(&a, &b).unwrap();
        prop_assert!(alg.unsigned_abs() as usize <= i);
        prop_assert_eq!((i as i64 - alg).rem_euclid(2), 0);

        let (ma, mb) = minimal_position(&a, &b).unwrap();
        let (ma2, mb2) = minimal_position(&ma, &mb).unwrap();
        prop_assert!(ma2.same_oriented(&ma) && mb2.same_oriented(&mb));

        if !a.isotopic(&b) {
            let p = intersection_pattern(&a, &b).unwrap();
            prop_assert_eq!(p.along_a.len(), i);
            let mut x = p.along_a.clone();
            let mut y = p.along_b.clone();
            x.sort();
            y.sort();
            prop_assert_eq!(x, y);
            prop_assert_eq!(p.algebraic() as i64, alg);
            prop_assert_eq!(p.adjacency.len(), i);
            let cls = classify_pair(&a, &b).unwrap();
            prop_assert_eq!(cls.count, i);
            prop_assert_eq!(cls.tag == PairTag::TwoZero, i == 2 && alg == 0);
        }
    }
}
