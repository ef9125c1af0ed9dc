//! Positive reduction of the crossing number of two curves.
//!
//! Given `a` and `b` in minimal position, [`find_reduction_curve`] builds a
//! simple curve `c` out of one arc of `a` and one arc of `b` such that the
//! positive twist `D_c` strictly lowers the number of crossings of `b` with
//! `a`. [`reduce_pair`] iterates until the pair is disjoint, meets once, or
//! meets twice with opposite signs.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{arrange, Crossing};
use crate::curve::EmbeddedCurve;
use crate::curve_calculus::{classify_pair, geometric_intersection, PairClass};
use crate::error::{Error, Result};
use crate::twist_engine::{apply_twist, TwistWord};

/// Numerical slack for the length postconditions.
const LENGTH_SLACK: f64 = 1e-6;

/// One crossing point, located on both curves.
#[derive(Clone, Copy, Debug)]
struct Point {
    chord_a: usize,
    chord_b: usize,
    /// Rank along `a` and along `b`.
    on_a: usize,
    on_b: usize,
    sign: i32,
}

/// Sides crossed when moving along a curve between two of its points, each
/// given as `(chord, rank along the curve)`.
pub(crate) fn arc_sides(exits: &[u16], partner: &[u16], from: (usize, usize), to: (usize, usize), forward: bool) -> Vec<u16> {
    let m = exits.len();
    let same_chord = from.0 == to.0;
    if forward {
        let mut count = (to.0 + m - from.0) % m;
        if same_chord && to.1 < from.1 {
            count = m;
        }
        (0..count).map(|i| exits[(from.0 + i) % m]).collect()
    } else {
        let mut count = (from.0 + m - to.0) % m;
        if same_chord && to.1 > from.1 {
            count = m;
        }
        (0..count)
            .map(|i| partner[exits[(from.0 + 2 * m - 1 - i) % m] as usize])
            .collect()
    }
}

fn points(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<Vec<Point>> {
    let chi = a.surface().chirality.sign();
    let arr = arrange(&[a, b])?;
    let xa: Vec<Crossing> = arr.along(0, 1, chi);
    let xb: Vec<Crossing> = arr.along(1, 0, chi);
    Ok(xa
        .iter()
        .enumerate()
        .map(|(i, x)| Point {
            chord_a: x.chord_a,
            chord_b: x.chord_b,
            on_a: i,
            on_b: xb
                .iter()
                .position(|y| y.chord_a == x.chord_b && y.chord_b == x.chord_a)
                .expect("crossing seen from both curves"),
            sign: x.sign,
        })
        .collect())
}

/// Closed paths made of an arc of `a` from `p` to `q` and an arc of `b`
/// from `q` back to `p`, in all four direction combinations.
fn arc_loops(a: &EmbeddedCurve, b: &EmbeddedCurve, p: &Point, q: &Point) -> Vec<Vec<u16>> {
    let partner = a.surface().partner_table();
    let mut out = vec![];
    for fa in [true, false] {
        for fb in [true, false] {
            let mut w = arc_sides(a.exits(), &partner, (p.chord_a, p.on_a), (q.chord_a, q.on_a), fa);
            w.extend(arc_sides(b.exits(), &partner, (q.chord_b, q.on_b), (p.chord_b, p.on_b), fb));
            if !w.is_empty() {
                out.push(w);
            }
        }
    }
    out
}

/// Simple curves made of one arc of `a` and one arc of `b`.
pub(crate) fn surgery_curves(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<Vec<EmbeddedCurve>> {
    let pts = points(a, b)?;
    let s = a.surface();
    let mut out: Vec<EmbeddedCurve> = vec![];
    for p in 0..pts.len() {
        for q in 0..pts.len() {
            if p == q {
                continue;
            }
            for w in arc_loops(a, b, &pts[p], &pts[q]) {
                if let Ok(c) = EmbeddedCurve::from_side_word(s, &w, false) {
                    if !c.is_peripheral() && !out.iter().any(|d| d.isotopic(&c)) {
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Candidate point pairs in search order: adjacent equal-sign pairs
/// first, then pairs from alternating triples, then everything else.
fn candidate_pairs(pts: &[Point]) -> Vec<(usize, usize)> {
    let k = pts.len();
    let mut pairs = vec![];
    let push = |pairs: &mut Vec<(usize, usize)>, p: (usize, usize)| {
        if p.0 != p.1 && !pairs.contains(&p) {
            pairs.push(p);
        }
    };
    for s in 0..k {
        let t = (s + 1) % k;
        if pts[s].sign == pts[t].sign {
            push(&mut pairs, (s, t));
        }
    }
    if k >= 3 {
        for s in 0..k {
            let (x, y, z) = (s, (s + 1) % k, (s + 2) % k);
            if pts[x].sign != pts[y].sign && pts[y].sign != pts[z].sign {
                push(&mut pairs, (x, y));
                push(&mut pairs, (y, z));
                push(&mut pairs, (x, z));
            }
        }
    }
    for s in 0..k {
        for t in 0..k {
            push(&mut pairs, (s, t));
        }
    }
    pairs
}

/// A simple curve `c` with `I(D_c(b), a) < I(b, a)`, `l(c) ≤ l(a) + l(b)`
/// and `l(D_c(b)) ≤ 2 l(a) + l(b)`.
pub fn find_reduction_curve(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<EmbeddedCurve> {
    let cls = classify_pair(a, b)?;
    if cls.is_terminal() {
        return Err(Error::Terminal(format!("{:?} with {} crossings", cls.tag, cls.count)));
    }
    let pts = points(a, b)?;
    let count = pts.len();
    let s = a.surface().clone();
    let (la, lb) = (a.length(), b.length());
    let mut loops = vec![];
    for (p, q) in candidate_pairs(&pts) {
        loops.extend(arc_loops(a, b, &pts[p], &pts[q]));
    }
    let found = loops.par_iter().find_map_first(|w| {
        let c = EmbeddedCurve::from_side_word(&s, w, false).ok()?;
        if c.is_peripheral() || c.length() > la + lb + LENGTH_SLACK {
            return None;
        }
        let img = apply_twist(&c, 1, b).ok()?;
        if img.length() > 2.0 * la + lb + LENGTH_SLACK {
            return None;
        }
        let n = geometric_intersection(&img, a).ok()?;
        (n < count).then_some(c)
    });
    found.ok_or_else(|| Error::Budget("no reducing curve among the arc surgeries".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionStep {
    pub curve: Vec<u16>,
    pub before: usize,
    pub after: usize,
    pub length: f64,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub word: TwistWord,
    pub b_final: EmbeddedCurve,
    pub class: PairClass,
    pub steps: Vec<ReductionStep>,
}

/// Apply reducing positive twists to `b` until its pair class with `a` is
/// terminal.
pub fn reduce_pair(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<Reduction> {
    let mut word = TwistWord::new();
    let mut cur = b.clone();
    let mut steps = vec![];
    loop {
        let cls = classify_pair(a, &cur)?;
        if cls.is_terminal() {
            return Ok(Reduction {
                word,
                b_final: cur,
                class: cls,
                steps,
            });
        }
        let c = find_reduction_curve(a, &cur)?;
        let next = apply_twist(&c, 1, &cur)?;
        let after = geometric_intersection(a, &next)?;
        steps.push(ReductionStep {
            curve: c.exits().to_vec(),
            before: cls.count,
            after,
            length: c.length(),
        });
        word = word.then(&c, 1)?;
        cur = next;
    }
}
