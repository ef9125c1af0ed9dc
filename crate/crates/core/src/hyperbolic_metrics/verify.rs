//! Numeric checks of the intersection and length inequalities.
//!
//! Every check reports its raw values next to the bound. Upper bounds pass
//! when `measured ≤ bound + SLACK`, lower bounds when
//! `measured ≥ bound − SLACK`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::EmbeddedCurve;
use crate::curve_calculus::{classify_pair, geometric_intersection};
use crate::error::{Error, Result};
use crate::lickorish_reduction::{find_reduction_curve, reduce_pair};
use crate::positive_factorization::{find_connector_curve, find_partner_curve};
use crate::surface_model::{is_separating, PantsSystem};
use crate::twist_engine::apply_twist;

use super::structure::{curve_length, FNStructure, MarkedCurveWord};

/// Absolute slack on the favourable side of every inequality.
pub const SLACK: f64 = 1e-6;

/// One checked inequality.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub check: String,
    pub curves: String,
    pub measured: f64,
    pub bound: f64,
    /// Share of the allowance used: `measured/bound` for upper bounds,
    /// `bound/measured` for lower bounds.
    pub ratio: f64,
    pub pass: bool,
}

impl BoundRow {
    fn upper(check: &str, curves: String, measured: f64, bound: f64) -> BoundRow {
        BoundRow {
            check: check.into(),
            curves,
            measured,
            bound,
            ratio: measured / bound,
            pass: measured <= bound + SLACK,
        }
    }

    fn lower(check: &str, curves: String, measured: f64, bound: f64) -> BoundRow {
        BoundRow {
            check: check.into(),
            curves,
            measured,
            bound,
            ratio: bound / measured,
            pass: measured >= bound - SLACK,
        }
    }
}

fn label(c: &EmbeddedCurve) -> String {
    MarkedCurveWord::of(c).label(&c.surface().generator_names)
}

fn pair_label(a: &EmbeddedCurve, b: &EmbeddedCurve) -> String {
    format!("{} | {}", label(a), label(b))
}

/// The injectivity radius used by the lower-bound checks. The orbit
/// enumeration is complete up to its cutoff, so the value is exact up to
/// floating-point rounding.
fn radius(st: &FNStructure) -> Result<f64> {
    Ok(st.injectivity_radius()?.radius)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThurstonReport {
    pub intersection: usize,
    pub length_a: f64,
    pub length_b: f64,
    pub radius: f64,
    pub bound: f64,
    pub pass: bool,
    #[serde(skip)]
    pub row: Option<BoundRow>,
}

/// `I(a, b) ≤ 4 l(a) l(b) / (π r²)`.
pub fn verify_thurston(st: &FNStructure, a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<ThurstonReport> {
    let r = radius(st)?;
    let i = geometric_intersection(a, b)?;
    let (la, lb) = (curve_length(st, a)?, curve_length(st, b)?);
    let bound = 4.0 * la * lb / (std::f64::consts::PI * r * r);
    let row = BoundRow::upper("thurston", pair_label(a, b), i as f64, bound);
    Ok(ThurstonReport {
        intersection: i,
        length_a: la,
        length_b: lb,
        radius: r,
        bound,
        pass: row.pass,
        row: Some(row),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistBoundReport {
    pub n: i32,
    pub intersection: usize,
    pub length_a: f64,
    pub length_b: f64,
    pub image_length: f64,
    pub upper: f64,
    pub lower: f64,
    pub upper_pass: bool,
    pub lower_pass: bool,
    #[serde(skip)]
    pub rows: Vec<BoundRow>,
}

/// `π r² |n| I / (4 l(b)) ≤ l(D_a^n(b)) ≤ |n| I l(a) + l(b)`.
pub fn verify_twist_bounds(st: &FNStructure, a: &EmbeddedCurve, b: &EmbeddedCurve, n: i32) -> Result<TwistBoundReport> {
    if n == 0 {
        return Err(Error::Precondition("twist exponent must be non-zero".into()));
    }
    a.require_essential()?;
    b.require_essential()?;
    let r = radius(st)?;
    let i = geometric_intersection(a, b)?;
    let (la, lb) = (curve_length(st, a)?, curve_length(st, b)?);
    let img = apply_twist(a, n, b)?;
    let li = curve_length(st, &img)?;
    let k = n.unsigned_abs() as f64 * i as f64;
    let upper = k * la + lb;
    let lower = std::f64::consts::PI * r * r * k / (4.0 * lb);
    let curves = format!("{} ^{n}", pair_label(a, b));
    let rows = vec![
        BoundRow::upper("twist_upper", curves.clone(), li, upper),
        BoundRow::lower("twist_lower", curves, li, lower),
    ];
    Ok(TwistBoundReport {
        n,
        intersection: i,
        length_a: la,
        length_b: lb,
        image_length: li,
        upper,
        lower,
        upper_pass: rows[0].pass,
        lower_pass: rows[1].pass,
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub length_c: f64,
    pub image_length: f64,
    pub bound_c: f64,
    pub bound_image: f64,
    pub pass: bool,
    #[serde(skip)]
    pub rows: Vec<BoundRow>,
}

/// `l(c) ≤ l(a) + l(b)` and `l(D_c(b)) ≤ 2 l(a) + l(b)`.
pub fn verify_reduction_lengths(
    st: &FNStructure,
    a: &EmbeddedCurve,
    b: &EmbeddedCurve,
    c: &EmbeddedCurve,
) -> Result<ReductionReport> {
    let (la, lb, lc) = (curve_length(st, a)?, curve_length(st, b)?, curve_length(st, c)?);
    let li = curve_length(st, &apply_twist(c, 1, b)?)?;
    let curves = format!("{} | {}", pair_label(a, b), label(c));
    let rows = vec![
        BoundRow::upper("reduction_curve", curves.clone(), lc, la + lb),
        BoundRow::upper("reduction_image", curves, li, 2.0 * la + lb),
    ];
    Ok(ReductionReport {
        length_c: lc,
        image_length: li,
        bound_c: la + lb,
        bound_image: 2.0 * la + lb,
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

/// `l(c_i) ≤ (2i − 1) l(a) + l(b)` along a full reduction of `b` against
/// `a`. Terminal pairs give no rows.
pub fn verify_reduction_schedule(st: &FNStructure, a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<Vec<BoundRow>> {
    let red = reduce_pair(a, b)?;
    let (la, lb) = (curve_length(st, a)?, curve_length(st, b)?);
    let s = a.surface();
    let mut rows = vec![];
    for (k, step) in red.steps.iter().enumerate() {
        let c = EmbeddedCurve::from_exits(s, &step.curve, false)?;
        let i = (k + 1) as f64;
        let bound = (2.0 * i - 1.0) * la + lb;
        let curves = format!("{} | step {}", pair_label(a, b), k + 1);
        rows.push(BoundRow::upper("schedule", curves, curve_length(st, &c)?, bound));
    }
    Ok(rows)
}

/// Pants curves `≤ 26(g−1)`, duals `≤ 182(g−1) − log(r/4)` and
/// connectors `≤ 8(g−1) r / sinh r + 8r`.
pub fn verify_system_bounds(st: &FNStructure, sys: &PantsSystem) -> Result<Vec<BoundRow>> {
    let r = radius(st)?;
    let gm = (st.genus() as f64) - 1.0;
    let mut rows = vec![];
    let interior = sys.interior_curves();
    for a in interior {
        rows.push(BoundRow::upper("pants", label(a), curve_length(st, a)?, 26.0 * gm));
    }
    let dual_bound = 182.0 * gm - (r / 4.0).ln();
    for b in &sys.dual_curves {
        rows.push(BoundRow::upper("dual", label(b), curve_length(st, b)?, dual_bound));
    }
    let connector_bound = 8.0 * gm * r / r.sinh() + 8.0 * r;
    for i in 0..interior.len() {
        for j in i + 1..interior.len() {
            let (a, b) = (&interior[i], &interior[j]);
            let s = a.surface();
            if is_separating(s, a)? || is_separating(s, b)? {
                continue;
            }
            let c = find_connector_curve(a, b)?;
            let curves = format!("{} | {}", pair_label(a, b), label(&c));
            rows.push(BoundRow::upper("connector", curves, curve_length(st, &c)?, connector_bound));
        }
    }
    Ok(rows)
}

/// The checks a suite can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Thurston,
    Twist,
    Reduction,
    Schedule,
    System,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "thurston" => Suite::Thurston,
            "twist" => Suite::Twist,
            "reduction" => Suite::Reduction,
            "schedule" => Suite::Schedule,
            "system" => Suite::System,
            "all" => Suite::All,
            _ => return Err(Error::Validation(format!("unknown suite `{s}`"))),
        })
    }
}

fn signed(rng: &mut ChaCha8Rng, max: i32) -> i32 {
    let n = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        n
    } else {
        -n
    }
}

/// The filling system and a partner meeting each interior pants curve once.
/// The partners leave the Lagrangian spanned by the filling system, so
/// odd crossing numbers occur. Planar surfaces have no partners.
fn base_curves(sys: &PantsSystem) -> Vec<EmbeddedCurve> {
    let mut base = sys.filling_system();
    for a in sys.interior_curves() {
        base.extend(find_partner_curve(a, &[]).ok());
    }
    base
}

/// The base curves together with random twist images of them.
fn sample_pool(base: &[EmbeddedCurve], rng: &mut ChaCha8Rng, extra: usize) -> Result<Vec<EmbeddedCurve>> {
    let mut pool = base.to_vec();
    let mut tries = 0;
    while pool.len() < base.len() + extra && tries < 50 * (extra + 1) {
        tries += 1;
        let c = base.choose(rng).expect("non-empty system");
        let t = base.choose(rng).expect("non-empty system");
        let n = signed(rng, 2);
        let img = apply_twist(t, n, c)?;
        if !pool.iter().any(|p| p.isotopic(&img)) {
            pool.push(img);
        }
    }
    Ok(pool)
}

/// Two distinct pool curves, and for `crossing` ones that meet.
fn draw_pair<'a>(
    pool: &'a [EmbeddedCurve],
    rng: &mut ChaCha8Rng,
    crossing: bool,
) -> Result<(&'a EmbeddedCurve, &'a EmbeddedCurve)> {
    for _ in 0..1000 {
        let a = pool.choose(rng).expect("pool");
        let b = pool.choose(rng).expect("pool");
        if a.isotopic(b) || (crossing && geometric_intersection(a, b)? == 0) {
            continue;
        }
        return Ok((a, b));
    }
    Err(Error::Budget("no suitable curve pair in the pool".into()))
}

/// Randomized checks over the curves of `sys`, deterministic in `seed`.
///
/// Every sampled suite runs `samples` cases: one row per Thurston pair,
/// two per twist triple, two per reduction pair and one per step of each
/// reduction schedule. The system suite has no randomness.
pub fn run_suite(st: &FNStructure, sys: &PantsSystem, suite: Suite, seed: u64, samples: usize) -> Result<Vec<BoundRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = base_curves(sys);
    let interior = sys.interior_curves().to_vec();
    let pool = sample_pool(&base, &mut rng, samples.min(40))?;
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut rows = vec![];
    if wants(Suite::System) {
        rows.extend(verify_system_bounds(st, sys)?);
    }
    if wants(Suite::Thurston) {
        for _ in 0..samples {
            let (a, b) = draw_pair(&pool, &mut rng, false)?;
            rows.extend(verify_thurston(st, a, b)?.row);
        }
    }
    if wants(Suite::Twist) {
        // twisting along a short curve keeps the images manageable
        for _ in 0..samples {
            let (t, b) = draw_pair(&pool[..base.len()], &mut rng, true)?;
            let b = if rng.gen_bool(0.5) { b } else { pool.choose(&mut rng).expect("pool") };
            if t.isotopic(b) || geometric_intersection(t, b)? == 0 {
                continue;
            }
            rows.extend(verify_twist_bounds(st, t, b, signed(&mut rng, 4))?.rows);
        }
    }
    if wants(Suite::Reduction) {
        for _ in 0..samples {
            let p = interior.choose(&mut rng).expect("interior curve");
            let b = pool.choose(&mut rng).expect("pool");
            if p.isotopic(b) || classify_pair(p, b)?.is_terminal() {
                continue;
            }
            let c = find_reduction_curve(p, b)?;
            rows.extend(verify_reduction_lengths(st, p, b, &c)?.rows);
        }
    }
    if wants(Suite::Schedule) {
        for _ in 0..samples {
            let p = interior.choose(&mut rng).expect("interior curve");
            let b = pool.choose(&mut rng).expect("pool");
            if !p.isotopic(b) {
                rows.extend(verify_reduction_schedule(st, p, b)?);
            }
        }
    }
    Ok(rows)
}
