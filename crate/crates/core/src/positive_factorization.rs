//! Factorization of a mapping class into positive twists followed by twists
//! on pants curves.
//!
//! For each interior pants curve `a_i` in turn, the current pullback of
//! `a_i` is brought back onto `a_i` by positive twists: first the crossing
//! reduction, then a short matching word, then, if the orientation came out
//! reversed, the six-twist involution of a one-holed torus around `a_i`.
//! All twist curves of step `i` avoid the curves fixed before it. What is
//! left fixes every pants curve and is a product of twists on them, whose
//! exponents are read off from the images of the dual curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{arrange, Planar};
use crate::curve::{CurveRecord, EmbeddedCurve};
use crate::curve_calculus::{classify_pair, fills, geometric_intersection, PairTag};
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::lickorish_reduction::{arc_sides, reduce_pair, surgery_curves};
use crate::surface_model::{build_preset, is_separating, PantsSystem};
use crate::twist_engine::{apply_twist, apply_word, TwistWord};

/// Candidate curves examined by the connector and partner searches.
pub const SEARCH_BUDGET: usize = 20_000;

/// Letters allowed beyond the crossing number when fixing one pants curve.
pub const STEP_OVERHEAD: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct StepLog {
    pub curve: usize,
    /// `I(a_i, pullback of a_i)` when the step starts.
    pub intersection: usize,
    pub reduce_letters: usize,
    pub match_letters: usize,
    pub orientation_letters: usize,
    pub within_budget: bool,
}

impl StepLog {
    pub fn letters(&self) -> usize {
        self.reduce_letters + self.match_letters + self.orientation_letters
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub passed: bool,
    /// Images of the filling system under `p f⁻¹`, equal to their images
    /// under `q⁻¹`.
    pub images: Vec<CurveRecord>,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    /// Positive word, applied first.
    pub p: TwistWord,
    /// Exponents of the twists on the interior pants curves, applied after `p`.
    pub q_exponents: Vec<i64>,
    pub certificate: Certificate,
    pub step_log: Vec<StepLog>,
}

impl FactorizationResult {
    /// The word `q` as twists on the pants curves.
    pub fn q_word(&self, sys: &PantsSystem) -> Result<TwistWord> {
        pants_word(sys, &self.q_exponents)
    }
}

fn pants_word(sys: &PantsSystem, n: &[i64]) -> Result<TwistWord> {
    let mut w = TwistWord::new();
    for (a, &e) in sys.interior_curves().iter().zip(n) {
        if e != 0 {
            w = w.then(a, e as i32)?;
        }
    }
    Ok(w)
}

/// Curves used to build connectors and partners: the filling system of the
/// preset the surface came from, then its images under single twists
/// along its own curves.
fn helpers(a: &EmbeddedCurve) -> Vec<EmbeddedCurve> {
    let s = a.surface();
    let base = match build_preset(&s.name) {
        Ok((p, sys)) if p.id() == s.id() => sys.filling_system(),
        _ => return vec![],
    };
    let mut out = base.clone();
    for h in &base {
        for g in &base {
            for n in [1, -1] {
                if let Ok(img) = apply_twist(g, n, h) {
                    if !out.iter().any(|x| x.isotopic(&img)) {
                        out.push(img);
                    }
                }
            }
        }
    }
    out
}

/// A point on a helper or target curve, as `(chord, rank)` with ranks
/// comparable along the same curve.
type Mark = (usize, usize);

/// A crossing of the helper with one of the target or forbidden curves.
#[derive(Clone, Debug)]
struct Stop {
    /// Position along the helper.
    on_e: Mark,
    /// Index into `targets ++ forbidden`.
    curve: usize,
    /// Position along that curve.
    on_curve: Mark,
}

/// Helper crossings in order along the helper, plus the crossings of the
/// first two targets, located on both.
struct Layout {
    stops: Vec<Stop>,
    corners: Vec<(Mark, Mark)>,
}

/// Ranks of points sorted by `(chord, param)`.
fn ranks(keys: &[(usize, Real)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&i, &j| {
        keys[i].0.cmp(&keys[j].0).then(keys[i].1.partial_cmp(&keys[j].1).expect("finite"))
    });
    let mut r = vec![0; keys.len()];
    for (k, &i) in idx.iter().enumerate() {
        r[i] = k;
    }
    r
}

fn layout(e: &EmbeddedCurve, curves: &[&EmbeddedCurve], targets: usize) -> Result<Layout> {
    let mut all = vec![e];
    all.extend_from_slice(curves);
    let arr = arrange(&all)?;
    let planar = Planar::new(&arr, e.surface());
    let param = |g: usize, i: usize, h: usize, j: usize| planar.param(&arr.chords[g][i], &arr.chords[h][j]);
    // marked points on each curve: (chord, param) keys
    let mut keys: Vec<Vec<(usize, Real)>> = vec![vec![]; all.len()];
    let mut hits = vec![];
    for k in 1..all.len() {
        for x in arr.crossings(0, k, 1) {
            let (i, j) = (x.chord_a, x.chord_b);
            keys[0].push((i, param(0, i, k, j)));
            keys[k].push((j, param(k, j, 0, i)));
            hits.push((k, i, j, keys[0].len() - 1, keys[k].len() - 1));
        }
    }
    let mut xs = vec![];
    if targets == 2 {
        for x in arr.crossings(1, 2, 1) {
            let (i, j) = (x.chord_a, x.chord_b);
            keys[1].push((i, param(1, i, 2, j)));
            keys[2].push((j, param(2, j, 1, i)));
            xs.push((i, j, keys[1].len() - 1, keys[2].len() - 1));
        }
    }
    let r: Vec<Vec<usize>> = keys.iter().map(|k| ranks(k)).collect();
    let mut stops: Vec<Stop> = hits
        .into_iter()
        .map(|(k, i, j, ke, kc)| Stop {
            on_e: (i, r[0][ke]),
            curve: k - 1,
            on_curve: (j, r[k][kc]),
        })
        .collect();
    stops.sort_by_key(|st| st.on_e.1);
    let corners = xs
        .into_iter()
        .map(|(i, j, k1, k2)| ((i, r[1][k1]), (j, r[2][k2])))
        .collect();
    Ok(Layout { stops, corners })
}

/// Stops that a helper sub-arc may pass over.
const MAX_SPAN: usize = 4;

/// Forward sub-arcs of `e` between stops on the target curves, spanning at
/// most [`MAX_SPAN`] stops and none on a forbidden curve.
fn segments(st: &[Stop], targets: usize) -> Vec<(usize, usize)> {
    let n = st.len();
    let mut out = vec![];
    for i in (0..n).filter(|&i| st[i].curve < targets) {
        for d in 1..=MAX_SPAN.min(n.saturating_sub(1)) {
            let j = (i + d) % n;
            if st[j].curve >= targets {
                break;
            }
            out.push((i, j));
        }
    }
    out
}

fn arc(c: &EmbeddedCurve, partner: &[u16], from: Mark, to: Mark, forward: bool) -> Vec<u16> {
    arc_sides(c.exits(), partner, from, to, forward)
}

/// Search candidate loops built from helper curves; keep the shortest
/// accepted curve from the first helper that yields one.
fn search<F, G>(
    targets: &[&EmbeddedCurve],
    forbidden: &[EmbeddedCurve],
    build: G,
    accept: F,
) -> Result<EmbeddedCurve>
where
    G: Fn(&EmbeddedCurve, &Layout, &[u16]) -> Vec<Vec<u16>>,
    F: Fn(&EmbeddedCurve) -> bool,
{
    let a = targets[0];
    let s = a.surface().clone();
    let partner = s.partner_table();
    let mut tried = 0usize;
    let base = helpers(a);
    let mut pool = base.clone();
    if let [x, y] = targets {
        if !x.isotopic(y) {
            pool.extend(surgery_curves(x, y)?);
        }
    }
    for t in targets {
        for h in &base {
            for n in [1, -1] {
                if let Ok(img) = apply_twist(t, n, h) {
                    pool.push(img);
                }
            }
        }
    }
    let mut curves: Vec<&EmbeddedCurve> = targets.to_vec();
    curves.extend(forbidden.iter());
    // helpers that avoid the forbidden curves come first
    let misses = |e: &EmbeddedCurve| {
        forbidden
            .iter()
            .all(|f| f.isotopic(e) || geometric_intersection(f, e).map_or(false, |n| n == 0))
    };
    let (mut pool, rest): (Vec<_>, Vec<_>) = pool.into_iter().partition(|e| misses(e));
    pool.extend(rest);
    for e in &pool {
        if curves.iter().any(|t| t.isotopic(e)) {
            continue;
        }
        let Ok(lay) = layout(e, &curves, targets.len()) else { continue };
        let mut best: Option<EmbeddedCurve> = None;
        let words = build(e, &lay, &partner);
        log::trace!("helper with {} stops gives {} candidates", lay.stops.len(), words.len());
        for w in words {
            tried += 1;
            if tried > SEARCH_BUDGET {
                return Err(Error::Budget(format!("no curve found in {SEARCH_BUDGET} candidates")));
            }
            let c = match EmbeddedCurve::from_side_word(&s, &w, false) {
                Ok(c) => c,
                Err(err) => {
                    log::trace!("candidate rejected: {err}");
                    continue;
                }
            };
            if c.is_peripheral() || !accept(&c) {
                log::trace!("candidate {:?} rejected", c.exits());
                continue;
            }
            if forbidden
                .iter()
                .any(|f| geometric_intersection(f, &c).map_or(true, |n| n > 0))
            {
                continue;
            }
            if best.as_ref().map_or(true, |b| c.length() < b.length()) {
                best = Some(c);
            }
        }
        if let Some(c) = best {
            return Ok(c);
        }
    }
    Err(Error::Budget("no helper curve produced a candidate".into()))
}

/// A curve meeting `a` once and disjoint from `forbidden`.
pub fn find_partner_curve(a: &EmbeddedCurve, forbidden: &[EmbeddedCurve]) -> Result<EmbeddedCurve> {
    let build = |e: &EmbeddedCurve, lay: &Layout, partner: &[u16]| {
        let st = &lay.stops;
        let mut out = vec![];
        for (i, j) in segments(st, 1) {
            for fwd in [true, false] {
                let mut w = arc(e, partner, st[i].on_e, st[j].on_e, true);
                w.extend(arc(a, partner, st[j].on_curve, st[i].on_curve, fwd));
                out.push(w);
            }
        }
        out
    };
    search(&[a], forbidden, build, |c| {
        geometric_intersection(a, c).map_or(false, |n| n == 1)
    })
}

/// A curve meeting both `a` and `a_prime` exactly once, disjoint from
/// `forbidden`.
pub fn find_connector_curve_within(
    a: &EmbeddedCurve,
    a_prime: &EmbeddedCurve,
    forbidden: &[EmbeddedCurve],
) -> Result<EmbeddedCurve> {
    for c in [a, a_prime] {
        if is_separating(c.surface(), c)? {
            return Err(Error::Precondition("connector curves need non-separating ends".into()));
        }
    }
    let build = |e: &EmbeddedCurve, lay: &Layout, partner: &[u16]| {
        let st = &lay.stops;
        // helper arcs running from a stop on `a` to a stop on `a_prime`
        let segs: Vec<(usize, usize, bool)> = segments(st, 2)
            .into_iter()
            .filter(|&(i, j)| st[i].curve != st[j].curve)
            .map(|(i, j)| if st[i].curve == 0 { (i, j, true) } else { (j, i, false) })
            .collect();
        let mut out = vec![];
        for &(x1, y1, f1) in &segs {
            let head = arc(e, partner, st[x1].on_e, st[y1].on_e, f1);
            // close up through a crossing of `a` and `a_prime`
            for &(pa, pb) in &lay.corners {
                for da in [true, false] {
                    for db in [true, false] {
                        let mut w = head.clone();
                        w.extend(arc(a_prime, partner, st[y1].on_curve, pb, db));
                        w.extend(arc(a, partner, pa, st[x1].on_curve, da));
                        out.push(w);
                    }
                }
            }
            // or through a second helper arc
            for &(x2, y2, f2) in &segs {
                if (x1, y1) == (x2, y2) {
                    continue;
                }
                for da in [true, false] {
                    for db in [true, false] {
                        let mut w = head.clone();
                        w.extend(arc(a_prime, partner, st[y1].on_curve, st[y2].on_curve, db));
                        w.extend(arc(e, partner, st[y2].on_e, st[x2].on_e, !f2));
                        w.extend(arc(a, partner, st[x2].on_curve, st[x1].on_curve, da));
                        out.push(w);
                    }
                }
            }
        }
        out
    };
    search(&[a, a_prime], forbidden, build, |c| {
        geometric_intersection(a, c).map_or(false, |n| n == 1)
            && geometric_intersection(a_prime, c).map_or(false, |n| n == 1)
    })
}

pub fn find_connector_curve(a: &EmbeddedCurve, a_prime: &EmbeddedCurve) -> Result<EmbeddedCurve> {
    find_connector_curve_within(a, a_prime, &[])
}

fn word_of(letters: &[&EmbeddedCurve]) -> Result<TwistWord> {
    let mut w = TwistWord::new();
    for c in letters {
        w = w.then(c, 1)?;
    }
    Ok(w)
}

/// A positive word of at most four letters carrying `a_prime` onto `a`,
/// using only curves disjoint from `forbidden`.
pub fn match_curve_within(
    a_prime: &EmbeddedCurve,
    a: &EmbeddedCurve,
    forbidden: &[EmbeddedCurve],
) -> Result<TwistWord> {
    if a_prime.isotopic(a) {
        return Ok(TwistWord::new());
    }
    for c in [a, a_prime] {
        if is_separating(c.surface(), c)? {
            return Err(Error::Precondition("cannot match separating curves".into()));
        }
    }
    let cls = classify_pair(a_prime, a)?;
    let candidates: Vec<TwistWord> = match cls.tag {
        PairTag::OnePoint => vec![word_of(&[a, a_prime])?, word_of(&[a_prime, a])?],
        PairTag::Disjoint | PairTag::TwoZero => {
            let c = find_connector_curve_within(a, a_prime, forbidden)?;
            vec![
                word_of(&[&c, a_prime, a, &c])?,
                word_of(&[&c, a, a_prime, &c])?,
            ]
        }
        PairTag::Other => {
            return Err(Error::Precondition(format!(
                "pair with {} crossings is not terminal",
                cls.count
            )))
        }
    };
    for w in candidates {
        if apply_word(&w, a_prime)?.isotopic(a) {
            return Ok(w);
        }
    }
    Err(Error::Certificate("no matching word carried the curve over".into()))
}

pub fn match_curve(a_prime: &EmbeddedCurve, a: &EmbeddedCurve) -> Result<TwistWord> {
    match_curve_within(a_prime, a, &[])
}

/// `(D_a D_b D_a)²`, which reverses the orientations of both `a` and `b`.
pub fn fix_orientation(a: &EmbeddedCurve, partner: &EmbeddedCurve) -> Result<TwistWord> {
    if geometric_intersection(a, partner)? != 1 {
        return Err(Error::Precondition("the partner must meet the curve once".into()));
    }
    word_of(&[a, partner, a, a, partner, a])
}

/// Images of `curves`, oriented, under `w`.
fn images_under(w: &TwistWord, curves: &[EmbeddedCurve]) -> Result<Vec<EmbeddedCurve>> {
    if w.is_empty() {
        return Ok(curves.to_vec());
    }
    curves
        .par_iter()
        .map(|c| apply_word(w, &c.oriented()))
        .collect()
}

/// Exponents `n_i` with `Π D_{a_i}^{n_i}` equal to `residual` on the
/// filling system.
pub fn solve_pants_exponents(residual: &TwistWord, sys: &PantsSystem) -> Result<Vec<i64>> {
    let imgs = images_under(residual, &sys.filling_system())?;
    exponents_from_images(sys, &imgs)
}

/// As [`solve_pants_exponents`], given the images of the filling system.
fn exponents_from_images(sys: &PantsSystem, imgs: &[EmbeddedCurve]) -> Result<Vec<i64>> {
    let filling = sys.filling_system();
    if !fills(&filling)? {
        return Err(Error::Precondition("curve system does not fill".into()));
    }
    let k = sys.interior;
    let mut n = vec![];
    for i in 0..k {
        let (a, b) = (filling[i].oriented(), filling[k + i].oriented());
        if !imgs[i].same_oriented(&a) {
            return Err(Error::Certificate("residual moves a pants curve".into()));
        }
        let target = &imgs[k + i];
        if target.same_oriented(&b) {
            n.push(0);
            continue;
        }
        let x = geometric_intersection(target, &b)? as i64;
        let ab = geometric_intersection(&a, &b)? as i64;
        if ab == 0 {
            return Err(Error::Validation("dual curve misses its pants curve".into()));
        }
        // the crossing count grows linearly in |n|; try the exact
        // quotient first, then everything up to the bound
        let bound = x / ab + 1;
        let mut tries: Vec<i64> = vec![];
        if x % (ab * ab) == 0 {
            tries.extend([x / (ab * ab), -x / (ab * ab)]);
        }
        for m in 1..=bound {
            tries.extend([m, -m]);
        }
        log::debug!("dual curve {i}: searching exponents up to {bound}");
        let found = tries.into_iter().find(|&m| {
            apply_twist(&a, m as i32, &b).map_or(false, |img| img.same_oriented(target))
        });
        n.push(found.ok_or_else(|| {
            Error::Certificate("residual is not a product of pants twists".into())
        })?);
    }
    log::debug!("exponents {n:?}");
    let w = pants_word(sys, &n)?;
    for (c, img) in filling.iter().zip(imgs) {
        if !apply_word(&w, &c.oriented())?.same_oriented(img) {
            return Err(Error::Certificate("pants twists disagree with the residual".into()));
        }
    }
    Ok(n)
}

/// Write `f` as `q ∘ p` with `p` positive and `q` a product of twists on
/// the interior pants curves of `sys`.
///
/// The images of the filling system under `f⁻¹` followed by the current
/// `p` are kept up to date; at the end they certify `p f⁻¹ = q⁻¹`.
pub fn factorize(f: &TwistWord, sys: &PantsSystem) -> Result<FactorizationResult> {
    let filling = sys.filling_system();
    let mut imgs = images_under(&f.inverse(), &filling)?;
    let mut p = TwistWord::new();
    let mut fixed: Vec<EmbeddedCurve> = vec![];
    let mut log = vec![];
    for (i, a) in sys.interior_curves().iter().enumerate() {
        let a = a.oriented();
        let mut b = imgs[i].clone();
        let mut step = TwistWord::new();
        let intersection = geometric_intersection(&a, &b)?;
        log::debug!("pants curve {i}: pullback meets it {intersection} times");
        let (mut reduce_letters, mut match_letters, mut orientation_letters) = (0, 0, 0);
        if !b.isotopic(&a) {
            let red = reduce_pair(&a, &b)?;
            log::debug!("reduced with {} twists to {:?}", red.word.len(), red.class);
            reduce_letters = red.word.len();
            step = step.compose(&red.word)?;
            b = red.b_final;
            if !b.isotopic(&a) {
                if is_separating(a.surface(), &a)? {
                    return Err(Error::Certificate(format!(
                        "separating pants curve {i} is not isotopic to its pullback"
                    )));
                }
                let m = match_curve_within(&b, &a, &fixed)?;
                log::debug!("matched with {} twists", m.len());
                match_letters = m.len();
                b = apply_word(&m, &b)?;
                step = step.compose(&m)?;
            }
        }
        if !b.same_oriented(&a) {
            let d = find_partner_curve(&a, &fixed)?;
            let w = fix_orientation(&a, &d)?;
            orientation_letters = w.len();
            step = step.compose(&w)?;
        }
        imgs = images_under(&step, &imgs)?;
        if !imgs[i].same_oriented(&a) {
            return Err(Error::Certificate(format!("pants curve {i} was not restored")));
        }
        p = p.compose(&step)?;
        let letters = reduce_letters + match_letters + orientation_letters;
        log.push(StepLog {
            curve: i,
            intersection,
            reduce_letters,
            match_letters,
            orientation_letters,
            within_budget: letters <= intersection + STEP_OVERHEAD,
        });
        fixed.push(a);
    }
    let m = exponents_from_images(sys, &imgs)?;
    let q_exponents = m.iter().map(|x| -x).collect();
    Ok(FactorizationResult {
        p,
        q_exponents,
        certificate: Certificate {
            passed: true,
            images: imgs.iter().map(CurveRecord::from).collect(),
        },
        step_log: log,
    })
}

/// Re-check a factorization from scratch: `p f⁻¹` and `q⁻¹` must agree on
/// every oriented curve of the filling system.
pub fn check_factorization(
    f: &TwistWord,
    p: &TwistWord,
    q_exponents: &[i64],
    sys: &PantsSystem,
) -> Result<bool> {
    if !p.is_positive() {
        return Ok(false);
    }
    if q_exponents.len() != sys.interior {
        return Err(Error::Validation(format!(
            "expected {} pants exponents, got {}",
            sys.interior,
            q_exponents.len()
        )));
    }
    let filling = sys.filling_system();
    let lhs = images_under(&f.inverse().compose(p)?, &filling)?;
    let q = pants_word(sys, q_exponents)?;
    let rhs = images_under(&q.inverse(), &filling)?;
    Ok(lhs.iter().zip(&rhs).all(|(x, y)| x.same_oriented(y)))
}
