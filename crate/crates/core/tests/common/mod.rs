#![allow(dead_code)]

use std::sync::Arc;

use dehn_core::curve_calculus::geometric_intersection;
use dehn_core::positive_factorization::find_partner_curve;
use dehn_core::surface_model::torus_curve;
use dehn_core::twist_engine::{apply_word, TwistWord};
use dehn_core::{build_preset, CellSurface, EmbeddedCurve, PantsSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn torus() -> Arc<CellSurface> {
    build_preset("torus").unwrap().0
}

pub fn slope(p: i64, q: i64) -> EmbeddedCurve {
    torus_curve(&torus(), p, q).unwrap()
}

pub fn genus2() -> (Arc<CellSurface>, PantsSystem) {
    build_preset("genus2_closed").unwrap()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The filling system with a curve meeting each interior pants curve once.
/// Twists along these reach every homology class, unlike the filling
/// system alone, whose classes span a Lagrangian.
pub fn generators(sys: &PantsSystem) -> Vec<EmbeddedCurve> {
    let mut g = sys.filling_system();
    for a in sys.interior_curves() {
        g.push(find_partner_curve(a, &[]).unwrap());
    }
    g
}

/// Random word of `len` letters `D_c^{±1}` with `c` in the filling system.
pub fn random_word(sys: &PantsSystem, rng: &mut ChaCha8Rng, len: usize) -> TwistWord {
    let fill = sys.filling_system();
    let mut w = TwistWord::new();
    for _ in 0..len {
        let c = fill.choose(rng).unwrap();
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w = w.then(c, e).unwrap();
    }
    w
}

/// Image of a random generator under a random word in the generators of
/// up to `max_len` letters, oriented.
pub fn random_curve(gens: &[EmbeddedCurve], rng: &mut ChaCha8Rng, max_len: usize) -> EmbeddedCurve {
    let c = gens.choose(rng).unwrap().oriented();
    let len = rng.gen_range(0..=max_len);
    let mut w = TwistWord::new();
    for _ in 0..len {
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w = w.then(gens.choose(rng).unwrap(), e).unwrap();
    }
    apply_word(&w, &c).unwrap()
}

/// A random pair of distinct curves meeting between `lo` and `hi` times.
pub fn random_pair(
    gens: &[EmbeddedCurve],
    rng: &mut ChaCha8Rng,
    max_len: usize,
    lo: usize,
    hi: usize,
) -> (EmbeddedCurve, EmbeddedCurve, usize) {
    loop {
        let a = random_curve(gens, rng, max_len);
        let b = random_curve(gens, rng, max_len);
        if a.isotopic(&b) {
            continue;
        }
        let i = geometric_intersection(&a, &b).unwrap();
        if (lo..=hi).contains(&i) {
            return (a, b, i);
        }
    }
}
