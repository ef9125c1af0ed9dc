use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::numeric::{real, Mat2, Mat3};
use crate::polygon::{dirichlet_sides, enumerate_orbit_capped, free_reduce, Construction, GenLetter, GeneratorFn, Polygon};
use crate::surface_model::presets::DIRICHLET_CENTER;
use crate::surface_model::{CellSurface, PantsSystem};

use super::fenchel_nielsen::{
    four_holed_sphere_generators, length_of, one_holed_torus_generators, theta_generators,
    word_matrix, FnParams, RELATION,
};

/// Tolerances of the structure invariants.
const DET_TOL: f64 = 1e-10;
const RELATION_TOL: f64 = 1e-8;
const TRACE_TOL: f64 = 1e-8;

/// Largest orbit the injectivity-radius enumeration may visit.
const ORBIT_BUDGET: f64 = 200_000.0;

/// Trivalent graph dual to a pants decomposition of a shipped surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PantsGraph {
    /// Two pants glued along three curves (closed genus two).
    Theta,
    /// One pants with two cuffs glued together.
    OneHoledTorus,
    /// Two pants glued along one curve.
    FourHoledSphere,
}

impl PantsGraph {
    pub fn of(s: &CellSurface) -> Result<PantsGraph> {
        if s.is_flat() {
            return Err(Error::Validation(
                "the flat torus carries no hyperbolic structure".into(),
            ));
        }
        match (s.genus, s.boundary_count) {
            (2, 0) => Ok(PantsGraph::Theta),
            (1, 1) => Ok(PantsGraph::OneHoledTorus),
            (0, 4) => Ok(PantsGraph::FourHoledSphere),
            (g, n) => Err(Error::Validation(format!(
                "no pants graph for genus {g} with {n} boundary components"
            ))),
        }
    }

    pub fn interior(self) -> usize {
        match self {
            PantsGraph::Theta => 3,
            _ => 1,
        }
    }

    pub fn boundary(self) -> usize {
        match self {
            PantsGraph::Theta => 0,
            PantsGraph::OneHoledTorus => 1,
            PantsGraph::FourHoledSphere => 4,
        }
    }

    pub fn genus(self) -> usize {
        match self {
            PantsGraph::Theta => 2,
            PantsGraph::OneHoledTorus => 1,
            PantsGraph::FourHoledSphere => 0,
        }
    }

    pub fn preset(self) -> &'static str {
        match self {
            PantsGraph::Theta => "genus2_closed",
            PantsGraph::OneHoledTorus => "one_holed_torus",
            PantsGraph::FourHoledSphere => "four_holed_sphere",
        }
    }
}

/// Fenchel–Nielsen input as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FnInput {
    pub format: u32,
    pub graph: PantsGraph,
    /// Interior pants curves first, then the boundary curves.
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

/// A hyperbolic structure given by Fenchel–Nielsen coordinates, with its
/// holonomy on the generators of the preset marking.
#[derive(Debug)]
pub struct FNStructure {
    pub graph: PantsGraph,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
    /// Holonomy of every generator, rounded to `f64`.
    pub holonomy: Vec<[[f64; 2]; 2]>,
    /// Marked words of the pants curves, in the order of `lengths`.
    pub pants_words: Vec<Vec<GenLetter>>,
    /// Boundary lengths in the order the holonomy construction expects.
    canonical_boundary: Vec<f64>,
    injectivity: OnceLock<Result<InjectivityRadius>>,
}

/// A cyclically reduced word in the generators of the marking.
#[derive(Clone, Debug)]
pub struct MarkedCurveWord {
    pub word: Vec<GenLetter>,
    pub source: Option<EmbeddedCurve>,
}

/// Injectivity radius of a closed structure, found by enumerating the orbit
/// of the Dirichlet centre.
#[derive(Clone, Debug, Serialize)]
pub struct InjectivityRadius {
    /// Half the systole.
    pub radius: f64,
    pub systole: f64,
    pub systole_word: Vec<GenLetter>,
    /// Orbit points `g c` with `d(c, g c)` up to this value were examined.
    pub cutoff: f64,
    /// Largest distance from the centre to a vertex of the Dirichlet domain.
    pub covering_radius: f64,
    pub elements: usize,
    /// Every closed geodesic shorter than the reported systole would have
    /// a conjugate inside the cutoff, so the value is exact up to rounding.
    pub certified: bool,
}

fn cyclic_reduce(word: &[GenLetter]) -> Vec<GenLetter> {
    let mut w = free_reduce(word);
    while w.len() >= 2 {
        let (f, l) = (w[0], w[w.len() - 1]);
        if f.0 == l.0 && f.1 == -l.1 {
            w = w[1..w.len() - 1].to_vec();
        } else {
            break;
        }
    }
    w
}

impl MarkedCurveWord {
    /// The word of a curve: the pairing words of its exit sides.
    pub fn of(c: &EmbeddedCurve) -> MarkedCurveWord {
        let s = c.surface();
        let w: Vec<GenLetter> = c
            .exits()
            .iter()
            .flat_map(|&k| s.side_words[k as usize].iter().copied())
            .collect();
        MarkedCurveWord {
            word: cyclic_reduce(&w),
            source: Some(c.clone()),
        }
    }

    pub fn from_word(word: &[GenLetter]) -> Result<MarkedCurveWord> {
        let word = cyclic_reduce(word);
        if word.is_empty() {
            return Err(Error::NotEssential("trivial word".into()));
        }
        Ok(MarkedCurveWord { word, source: None })
    }

    /// Generator names with inverses in upper case, e.g. `x y S`.
    pub fn label(&self, names: &[String]) -> String {
        self.word
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
                if e > 0 {
                    n
                } else {
                    format!("{n}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn holonomy_at(graph: PantsGraph, lengths: &[f64], boundary: &[f64], twists: &[f64], prec: u32) -> Result<Vec<Mat2>> {
    match graph {
        PantsGraph::Theta => {
            let p = FnParams {
                lengths: [lengths[0], lengths[1], lengths[2]],
                twists: [twists[0], twists[1], twists[2]],
            };
            Ok(theta_generators(&p, prec)?.to_vec())
        }
        PantsGraph::OneHoledTorus => {
            Ok(one_holed_torus_generators(lengths[0], twists[0], boundary[0], prec)?.to_vec())
        }
        PantsGraph::FourHoledSphere => {
            let b = [boundary[0], boundary[1], boundary[2], boundary[3]];
            Ok(four_holed_sphere_generators(lengths[0], twists[0], b, prec)?.to_vec())
        }
    }
}

fn max_dev(m: &[[f64; 2]; 2], sign: f64) -> f64 {
    (m[0][0] - sign)
        .abs()
        .max((m[1][1] - sign).abs())
        .max(m[0][1].abs())
        .max(m[1][0].abs())
}

/// Build the structure with the given coordinates on the surface of `sys`.
pub fn build_fn_structure(sys: &PantsSystem, lengths: &[f64], twists: &[f64]) -> Result<FNStructure> {
    let s = sys
        .pants_curves
        .first()
        .map(|c| c.surface().clone())
        .ok_or_else(|| Error::Validation("the flat torus carries no hyperbolic structure".into()))?;
    let graph = PantsGraph::of(&s)?;
    let (ni, nb) = (graph.interior(), graph.boundary());
    if sys.interior != ni || sys.pants_curves.len() != ni + nb {
        return Err(Error::Validation("pants system does not match the pants graph".into()));
    }
    if lengths.len() != ni + nb || twists.len() != ni {
        return Err(Error::Validation(format!(
            "graph needs {} lengths and {} twists, got {} and {}",
            ni + nb,
            ni,
            lengths.len(),
            twists.len()
        )));
    }
    if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::Validation(format!("non-positive length {l}")));
    }
    if twists.iter().any(|t| !t.is_finite()) {
        return Err(Error::Validation("non-finite twist".into()));
    }
    let pants_words: Vec<Vec<GenLetter>> = sys
        .pants_curves
        .iter()
        .map(|c| MarkedCurveWord::of(c).word)
        .collect();
    let mut canonical_boundary = lengths[ni..].to_vec();
    if graph == PantsGraph::FourHoledSphere {
        // the first three boundaries are single generators, the last one
        // their product
        let mut seen = [false; 4];
        for (k, w) in pants_words[ni..].iter().enumerate() {
            let slot = if w.len() == 1 { w[0].0 } else { 3 };
            if slot > 3 || seen[slot] {
                return Err(Error::Validation("unexpected boundary marking".into()));
            }
            seen[slot] = true;
            canonical_boundary[slot] = lengths[ni + k];
        }
    }
    let gens = holonomy_at(graph, lengths, &canonical_boundary, twists, 128)?;
    let st = FNStructure {
        graph,
        lengths: lengths.to_vec(),
        twists: twists.to_vec(),
        holonomy: gens.iter().map(|m| m.to_f64()).collect(),
        pants_words,
        canonical_boundary,
        injectivity: OnceLock::new(),
    };
    st.check_invariants(&gens)?;
    Ok(st)
}

/// Build a structure on the preset surface named by the graph of `input`.
pub fn build_from_input(input: &FnInput) -> Result<(FNStructure, Arc<CellSurface>, PantsSystem)> {
    if input.format != crate::surface_model::FORMAT {
        return Err(Error::Validation(format!("unsupported format {}", input.format)));
    }
    let (s, sys) = crate::surface_model::build_preset(input.graph.preset())?;
    let st = build_fn_structure(&sys, &input.lengths, &input.twists)?;
    Ok((st, s, sys))
}

impl FNStructure {
    /// Holonomy of the generators at precision `prec`.
    pub fn generators(&self, prec: u32) -> Vec<Mat2> {
        holonomy_at(self.graph, &self.lengths, &self.canonical_boundary, &self.twists, prec)
            .expect("coordinates were validated on construction")
    }

    pub fn is_closed(&self) -> bool {
        self.graph.boundary() == 0
    }

    pub fn genus(&self) -> usize {
        self.graph.genus()
    }

    /// The surface relation, for closed structures.
    pub fn relation(&self) -> Option<Vec<GenLetter>> {
        self.is_closed()
            .then(|| RELATION.to_vec())
    }

    fn check_invariants(&self, gens: &[Mat2]) -> Result<()> {
        for (i, g) in gens.iter().enumerate() {
            let d = g.det().to_f64();
            if (d - 1.0).abs() > DET_TOL {
                return Err(Error::Geometry(format!("generator {i} has determinant {d}")));
            }
        }
        if let Some(rel) = self.relation() {
            let m = word_matrix(gens, &rel).to_f64();
            let dev = max_dev(&m, m[0][0].signum());
            if dev > RELATION_TOL {
                return Err(Error::Geometry(format!("relation off by {dev:e}")));
            }
        }
        for (w, &l) in self.pants_words.iter().zip(&self.lengths) {
            let tr = word_matrix(gens, w).trace().to_f64().abs();
            let want = 2.0 * (l / 2.0).cosh();
            if (tr - want).abs() > TRACE_TOL * want {
                return Err(Error::Geometry(format!(
                    "pants curve trace {tr} differs from 2cosh({l}/2) = {want}"
                )));
            }
        }
        Ok(())
    }

    /// Largest deviation of the relation product from `±1`.
    pub fn relation_defect(&self) -> Option<f64> {
        let rel = self.relation()?;
        let m = word_matrix(&self.generators(128), &rel).to_f64();
        Some(max_dev(&m, m[0][0].signum()))
    }

    /// Lorentz matrices of the generators.
    fn lorentz(&self, prec: u32) -> Vec<Mat3> {
        self.generators(prec).iter().map(|m| m.to_lorentz()).collect()
    }

    pub fn injectivity_radius(&self) -> Result<InjectivityRadius> {
        self.injectivity
            .get_or_init(|| injectivity_radius_uncached(self))
            .clone()
    }

    /// Half the shortest pants length: the radius can only be smaller.
    pub fn injectivity_upper_bound(&self) -> f64 {
        self.lengths[..self.graph.interior()]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
            / 2.0
    }
}

/// Length of the closed geodesic in the class of `w`.
pub fn geodesic_length(st: &FNStructure, w: &MarkedCurveWord) -> Result<f64> {
    let word = cyclic_reduce(&w.word);
    if word.is_empty() {
        return Err(Error::NotEssential("trivial word".into()));
    }
    // entries of the product grow by at most the largest generator norm per
    // letter, and the trace may cancel all of that
    let growth = st
        .holonomy
        .iter()
        .map(|m| m.iter().flatten().map(|x| x.abs()).sum::<f64>())
        .fold(2.0, f64::max)
        .log2();
    let bits = 128.0 + word.len() as f64 * growth;
    let prec = ((bits / 64.0).ceil() as u32) * 64;
    let m = word_matrix(&st.generators(prec), &word);
    length_of(&m)
        .map(|l| l.to_f64())
        .ok_or_else(|| Error::NotEssential("non-hyperbolic element (|tr| ≤ 2)".into()))
}

/// Length of a curve of the preset surface in the structure `st`.
pub fn curve_length(st: &FNStructure, c: &EmbeddedCurve) -> Result<f64> {
    geodesic_length(st, &MarkedCurveWord::of(c))
}

/// The injectivity radius of a closed structure, cached on the structure.
pub fn injectivity_radius(st: &FNStructure) -> Result<InjectivityRadius> {
    st.injectivity_radius()
}

fn distance_f64(c: [f64; 3], p: [f64; 3]) -> f64 {
    (c[2] * p[2] - c[0] * p[0] - c[1] * p[1]).max(1.0).acosh()
}

fn injectivity_radius_uncached(st: &FNStructure) -> Result<InjectivityRadius> {
    if !st.is_closed() {
        return Err(Error::Precondition("injectivity radius needs a closed structure".into()));
    }
    let gens = st.lorentz(128);
    let sides = dirichlet_sides(&gens, DIRICHLET_CENTER)?;
    let (graph, lengths, boundary, twists) = (
        st.graph,
        st.lengths.clone(),
        st.canonical_boundary.clone(),
        st.twists.clone(),
    );
    let gen_fn: Arc<GeneratorFn> = Arc::new(move |prec| {
        holonomy_at(graph, &lengths, &boundary, &twists, prec)
            .expect("validated coordinates")
            .iter()
            .map(|m| m.to_lorentz())
            .collect()
    });
    let poly = Polygon::new(
        sides.clone(),
        Construction::Dirichlet { center: DIRICHLET_CENTER },
        vec![],
        gen_fn,
    );
    let data = poly.data(128);
    let c = crate::numeric::Vec3::from_klein(
        &real(128, DIRICHLET_CENTER.0),
        &real(128, DIRICHLET_CENTER.1),
    );
    let cf = c.to_f64();
    let rho = data
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = (v.x.to_f64(), v.y.to_f64());
            let w = (1.0 - x * x - y * y).sqrt();
            distance_f64(cf, [x / w, y / w, 1.0 / w])
        })
        .fold(0.0, f64::max);
    let best = 2.0 * st.injectivity_upper_bound();
    // a closed geodesic of length ℓ passes within ρ of some translate of
    // the centre, so a conjugate moves the centre by at most ℓ + 2ρ
    let cutoff = best + 2.0 * rho;
    // the tiles met by a segment of length R have centres within R + ρ
    let reach = cutoff + rho;
    let tiles = (reach.cosh() - 1.0) / 2.0;
    if tiles > ORBIT_BUDGET {
        return Err(Error::Budget(format!(
            "orbit of radius {reach:.2} too large to certify (injectivity radius ≤ {:.6})",
            best / 2.0
        )));
    }
    let elems = enumerate_orbit_capped(
        &data.pairing,
        DIRICHLET_CENTER,
        cutoff,
        rho + 1e-6,
        2 * ORBIT_BUDGET as usize,
    )?;
    let mut systole = best;
    let mut systole_word = vec![];
    for e in elems.iter().filter(|e| !e.word.is_empty()) {
        let tr = e.matrix[0][0] + e.matrix[1][1] + e.matrix[2][2];
        let l = ((tr - 1.0) / 2.0).max(1.0).acosh();
        if l > 0.0 && l < systole {
            systole = l;
            systole_word = e
                .word
                .iter()
                .flat_map(|&(k, sgn)| {
                    let w = sides[k].word.clone();
                    if sgn > 0 {
                        w
                    } else {
                        crate::polygon::invert_word(&w)
                    }
                })
                .collect();
        }
    }
    if systole_word.is_empty() {
        systole_word = st.pants_words[..st.graph.interior()]
            .iter()
            .zip(&st.lengths)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(w, _)| w.clone())
            .unwrap_or_default();
    }
    Ok(InjectivityRadius {
        radius: systole / 2.0,
        systole,
        systole_word: cyclic_reduce(&systole_word),
        cutoff,
        covering_radius: rho,
        elements: elems.len(),
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_model::{build_preset, ENGINE_FN};
    use crate::twist_engine::apply_twist;

    fn engine() -> (FNStructure, PantsSystem) {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        let st = build_fn_structure(&sys, &ENGINE_FN.lengths, &ENGINE_FN.twists).unwrap();
        (st, sys)
    }

    #[test]
    fn engine_lengths_match_traced_geodesics() {
        let (st, sys) = engine();
        let f = sys.filling_system();
        let mut curves = f.clone();
        curves.push(apply_twist(&f[0], 2, &f[3]).unwrap());
        curves.push(apply_twist(&f[4], -1, &f[2]).unwrap());
        for c in &curves {
            let l = curve_length(&st, c).unwrap();
            assert!((l - c.length()).abs() < 1e-9, "{l} vs {}", c.length());
        }
    }

    #[test]
    fn boundary_presets_build() {
        for (name, lengths) in [
            ("one_holed_torus", vec![1.5, 2.5]),
            ("four_holed_sphere", vec![2.0, 1.0, 1.2, 1.4, 1.6]),
        ] {
            let (_, sys) = build_preset(name).unwrap();
            let st = build_fn_structure(&sys, &lengths, &[0.3]).unwrap();
            for (c, l) in sys.pants_curves.iter().zip(&lengths) {
                let got = curve_length(&st, c).unwrap();
                assert!((got - l).abs() < 1e-9, "{name}: {got} vs {l}");
            }
            assert!(st.injectivity_radius().is_err());
        }
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        assert!(build_fn_structure(&sys, &[1.0, 2.0], &[0.0; 3]).is_err());
        assert!(build_fn_structure(&sys, &[1.0, -2.0, 1.0], &[0.0; 3]).is_err());
        let (_, torus) = build_preset("torus").unwrap();
        assert!(build_fn_structure(&torus, &[], &[]).is_err());
    }

    #[test]
    fn trace_of_first_pants_curve() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        let st = build_fn_structure(&sys, &[3.0, 2.0, 2.0], &[0.0; 3]).unwrap();
        let g = st.generators(128);
        let tr = word_matrix(&g, &st.pants_words[0]).trace().to_f64().abs();
        assert!((tr - 2.0 * 1.5f64.cosh()).abs() < 1e-8);
        let w = MarkedCurveWord::from_word(&st.pants_words[0]).unwrap();
        assert!((geodesic_length(&st, &w).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn twisting_keeps_the_relation() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        for t in [0.0, 0.7, -3.1, 11.0] {
            let st = build_fn_structure(&sys, &[2.0; 3], &[t, 0.0, 0.0]).unwrap();
            assert!(st.relation_defect().unwrap() < 1e-8);
        }
    }

    #[test]
    fn trivial_and_parabolic_words() {
        let (st, _) = engine();
        assert!(MarkedCurveWord::from_word(&[(0, 1), (0, -1)]).is_err());
        let w = MarkedCurveWord {
            word: vec![(1, 1), (1, -1)],
            source: None,
        };
        assert!(geodesic_length(&st, &w).is_err());
    }

    /// Shortest translation length over all cyclically reduced words of
    /// length at most `n`, by brute force in `f64`.
    fn brute_systole(st: &FNStructure, n: usize) -> f64 {
        let mut letters = vec![];
        for (g, m) in st.holonomy.iter().enumerate() {
            let inv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
            letters.push(((g, 1i8), *m));
            letters.push(((g, -1i8), inv));
        }
        fn mul(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
            [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ]
        }
        let mut best = f64::INFINITY;
        let mut stack: Vec<(Vec<GenLetter>, [[f64; 2]; 2])> =
            letters.iter().map(|(l, m)| (vec![*l], *m)).collect();
        while let Some((w, m)) = stack.pop() {
            let first = w[0];
            let last = w[w.len() - 1];
            if w.len() == 1 || !(first.0 == last.0 && first.1 == -last.1) {
                let tr = (m[0][0] + m[1][1]).abs();
                if tr > 2.0 {
                    best = best.min(2.0 * (tr / 2.0).acosh());
                }
            }
            if w.len() < n {
                for (l, g) in &letters {
                    if l.0 == last.0 && l.1 == -last.1 {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(*l);
                    stack.push((w2, mul(&m, g)));
                }
            }
        }
        best
    }

    #[test]
    fn systole_matches_word_enumeration() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        let st = build_fn_structure(&sys, &[1.5; 3], &[0.0; 3]).unwrap();
        let inj = st.injectivity_radius().unwrap();
        assert!(inj.certified);
        assert!((inj.radius - inj.systole / 2.0).abs() < 1e-15);
        let brute = brute_systole(&st, 6);
        assert!((inj.systole - brute).abs() < 1e-9, "{} vs {brute}", inj.systole);
        let w = MarkedCurveWord::from_word(&inj.systole_word).unwrap();
        assert!((geodesic_length(&st, &w).unwrap() - inj.systole).abs() < 1e-9);
    }

    #[test]
    fn engine_systole() {
        let (st, _) = engine();
        let inj = st.injectivity_radius().unwrap();
        eprintln!("{inj:?}");
        assert!(inj.systole <= 2.0 + 1e-12);
        assert!((inj.systole - brute_systole(&st, 6)).abs() < 1e-9);
    }

    #[test]
    fn shrinking_lengths_shrinks_the_systole() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        let mut last = f64::INFINITY;
        for k in [2.0, 1.5, 1.0, 0.6] {
            let st = build_fn_structure(&sys, &[k, 1.1 * k, 1.2 * k], &[0.2, 0.1, 0.0]).unwrap();
            let s = st.injectivity_radius().unwrap().systole;
            assert!(s <= last + 1e-12);
            last = s;
        }
    }

    #[test]
    fn tiny_pants_curve_bounds_the_radius() {
        let (_, sys) = build_preset("genus2_closed").unwrap();
        let st = build_fn_structure(&sys, &[0.01, 2.0, 2.0], &[0.0; 3]).unwrap();
        assert!(st.injectivity_upper_bound() <= 0.005);
        if let Ok(inj) = st.injectivity_radius() {
            assert!(inj.radius <= 0.005 + 1e-12);
        }
    }
}
