//! Surfaces as a single polygon with glued sides.
//!
//! Every shipped surface is a cell complex with one face: a fundamental
//! polygon whose sides (the face-corner slots) are paired by isometries or
//! left free as boundary edges. Curves live on the surface as closed
//! geodesics, recorded by their cutting sequences through the polygon.

mod cut;
mod json;
pub(crate) mod presets;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::numeric::{precision_for_length, Mat3, Real};
use crate::polygon::{GenLetter, Polygon};
use crate::trace::{self, RawTrace};

pub use cut::{cut_along, cut_along_multi, CutResult};
pub use json::{CurveJson, SurfaceJson, FORMAT};
pub use presets::{build_preset, genus2_waist, PresetId, ENGINE_FN};

/// Orientation convention of the surface. Intersection signs and twist
/// directions are mirrored on a left-hand surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    RightHand,
    LeftHand,
}

impl Chirality {
    pub fn sign(self) -> i32 {
        match self {
            Chirality::RightHand => 1,
            Chirality::LeftHand => -1,
        }
    }
}

/// How the polygon sits in a model geometry.
pub(crate) enum Geometry {
    /// Unit square with translations, for the torus.
    Flat,
    /// A polygon in the hyperbolic plane.
    Hyperbolic(Polygon),
    /// Combinatorial data only (pieces produced by cutting).
    Abstract,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct CellSurface {
    pub name: String,
    pub genus: usize,
    pub boundary_count: usize,
    /// Faces as cyclic lists of slots, counter-clockwise.
    pub faces: Vec<Vec<usize>>,
    /// Interior edges as pairs of glued slots.
    pub edge_pairings: Vec<(usize, usize)>,
    /// Slots lying on the boundary of the surface.
    pub boundary_edges: Vec<usize>,
    pub chirality: Chirality,
    /// Names of the generators used for homology and markings.
    pub generator_names: Vec<String>,
    /// Pairing element of every slot of the first face as a generator word.
    pub side_words: Vec<Vec<GenLetter>>,
    pub(crate) geometry: Geometry,
    /// Largest displacement of the centre by a single side pairing.
    pub(crate) step: f64,
    /// Unoriented canonical forms of the boundary curves.
    pub(crate) boundary_keys: Vec<Vec<u16>>,
    trace_cache: Mutex<HashMap<(Vec<u16>, u32), Arc<RawTrace>>>,
    id: u64,
}

impl std::fmt::Debug for CellSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CellSurface")
            .field("name", &self.name)
            .field("genus", &self.genus)
            .field("boundary_count", &self.boundary_count)
            .field("faces", &self.faces.len())
            .finish()
    }
}

impl CellSurface {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        name: &str,
        genus: usize,
        boundary_count: usize,
        faces: Vec<Vec<usize>>,
        edge_pairings: Vec<(usize, usize)>,
        boundary_edges: Vec<usize>,
        chirality: Chirality,
        generator_names: Vec<String>,
        side_words: Vec<Vec<GenLetter>>,
        geometry: Geometry,
        step: f64,
    ) -> CellSurface {
        CellSurface {
            name: name.to_string(),
            genus,
            boundary_count,
            faces,
            edge_pairings,
            boundary_edges,
            chirality,
            generator_names,
            side_words,
            geometry,
            step,
            boundary_keys: vec![],
            trace_cache: Mutex::new(HashMap::new()),
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// `3g − 3 + n`.
    pub fn norm(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.boundary_count as i64
    }

    /// Euler characteristic counted from the cells.
    pub fn euler_characteristic(&self) -> i64 {
        let slots: usize = self.faces.iter().map(|f| f.len()).sum();
        let edges = self.edge_pairings.len() + self.boundary_edges.len();
        let vertices = self.vertex_count(slots);
        vertices as i64 - edges as i64 + self.faces.len() as i64
    }

    /// Vertex classes of the cell complex: the corner at the start of slot
    /// `k` is identified across every glued pair.
    fn vertex_count(&self, slots: usize) -> usize {
        let mut next = vec![0usize; slots];
        for f in &self.faces {
            for (i, &s) in f.iter().enumerate() {
                next[s] = f[(i + 1) % f.len()];
            }
        }
        let mut uf = crate::polygon::UnionFind::new(slots);
        for &(a, b) in &self.edge_pairings {
            // start(a) ~ end(b) = start(next(b)), end(a) ~ start(b)
            uf.union(a, next[b]);
            uf.union(next[a], b);
        }
        let mut roots: Vec<usize> = (0..slots).map(|s| uf.find(s)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Check the cell-structure invariants.
    pub fn validate(&self) -> Result<()> {
        let slots: usize = self.faces.iter().map(|f| f.len()).sum();
        let mut seen = vec![0u8; slots];
        for &(a, b) in &self.edge_pairings {
            if a >= slots || b >= slots || a == b {
                return Err(Error::Validation(format!("bad pairing ({a}, {b})")));
            }
            seen[a] += 1;
            seen[b] += 1;
        }
        for &b in &self.boundary_edges {
            if b >= slots {
                return Err(Error::Validation(format!("bad boundary slot {b}")));
            }
            seen[b] += 1;
        }
        if let Some(k) = seen.iter().position(|&c| c != 1) {
            return Err(Error::Validation(format!(
                "slot {k} is used {} times",
                seen[k]
            )));
        }
        let chi = self.euler_characteristic();
        let expected = 2 - 2 * self.genus as i64 - self.boundary_count as i64;
        if chi != expected {
            return Err(Error::Validation(format!(
                "Euler characteristic {chi} does not match genus {} with {} boundary curves",
                self.genus, self.boundary_count
            )));
        }
        Ok(())
    }

    pub fn side_count(&self) -> usize {
        self.side_words.len()
    }

    /// Corners of the fundamental polygon in a model where geodesics are
    /// straight (Klein disc, or the unit square for the flat torus).
    pub(crate) fn planar_vertices(&self, prec: u32) -> Vec<(Real, Real)> {
        match &self.geometry {
            Geometry::Flat => [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
                .iter()
                .map(|&(x, y)| (crate::numeric::real(prec, x), crate::numeric::real(prec, y)))
                .collect(),
            Geometry::Hyperbolic(p) => p
                .data(prec)
                .vertices
                .iter()
                .map(|v| (v.x.clone(), v.y.clone()))
                .collect(),
            Geometry::Abstract => vec![],
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.geometry, Geometry::Flat)
    }

    pub fn is_abstract(&self) -> bool {
        matches!(self.geometry, Geometry::Abstract)
    }

    /// Partner slot of a side of the polygon (`None` on the boundary).
    pub fn partner(&self, side: usize) -> Option<usize> {
        self.edge_pairings.iter().find_map(|&(a, b)| {
            if a == side {
                Some(b)
            } else if b == side {
                Some(a)
            } else {
                None
            }
        })
    }

    pub(crate) fn partner_table(&self) -> Vec<u16> {
        let n = self.side_count();
        let mut t = vec![u16::MAX; n];
        for &(a, b) in &self.edge_pairings {
            t[a] = b as u16;
            t[b] = a as u16;
        }
        t
    }

    /// Edge id of a side and whether the side is the edge's reference side.
    pub fn edge_of_side(&self, side: usize) -> (usize, bool) {
        for (e, &(a, b)) in self.edge_pairings.iter().enumerate() {
            if a == side {
                return (e, true);
            }
            if b == side {
                return (e, false);
            }
        }
        panic!("side {side} is not paired")
    }

    /// Exponent-sum vector of a side word in the generators.
    pub fn abelianize(&self, exits: &[u16]) -> Vec<i64> {
        let mut v = vec![0i64; self.generator_names.len()];
        for &s in exits {
            for &(g, e) in &self.side_words[s as usize] {
                v[g] += e as i64;
            }
        }
        v
    }

    /// Precision used when two curves of the given lengths are compared.
    pub fn pair_precision(&self, la: f64, lb: f64) -> u32 {
        if self.is_flat() {
            trace::FLAT_PREC
        } else {
            precision_for_length(la + lb)
        }
    }

    /// Cached trace of a geodesic cutting sequence at precision `prec`,
    /// rotated to start at `exits[0]`.
    pub(crate) fn trace_of(&self, exits: &[u16], prec: u32) -> Result<Arc<RawTrace>> {
        let key = (exits.to_vec(), prec);
        if let Some(t) = self.trace_cache.lock().get(&key) {
            return Ok(t.clone());
        }
        let raw = self.trace_raw(exits, prec)?;
        let k = crate::curve::find_rotation(&raw.exits, exits).ok_or_else(|| {
            Error::Geometry("retraced geodesic has a different cutting sequence".into())
        })?;
        let t = Arc::new(raw.rotated(k));
        let mut cache = self.trace_cache.lock();
        if cache.len() > 20_000 {
            cache.clear();
        }
        cache.insert(key, t.clone());
        Ok(t)
    }

    /// Trace the geodesic homotopic to an arbitrary side word.
    pub(crate) fn trace_raw(&self, word: &[u16], prec: u32) -> Result<RawTrace> {
        match &self.geometry {
            Geometry::Flat => {
                let v = self.abelianize(word);
                trace::trace_flat(v[0], v[1])
            }
            Geometry::Hyperbolic(p) => trace::trace_side_word(p, word, self.step, prec),
            Geometry::Abstract => Err(Error::Validation(
                "curves cannot be traced on an abstract piece".into(),
            )),
        }
    }

    /// Trace the geodesic of a generator word.
    pub(crate) fn trace_gen_word(&self, word: &[GenLetter]) -> Result<RawTrace> {
        match &self.geometry {
            Geometry::Flat => {
                let mut v = [0i64; 2];
                for &(g, e) in word {
                    v[g] += e as i64;
                }
                trace::trace_flat(v[0], v[1])
            }
            Geometry::Hyperbolic(p) => {
                let p0 = trace::word_precision(word.len(), 2.0 * self.step);
                let g = gen_matrix(p, word, p0);
                let ell = crate::numeric::translation_length(&g)
                    .ok_or_else(|| Error::NotEssential("word is not hyperbolic".into()))?
                    .to_f64();
                let prec = precision_for_length(ell);
                let g = if prec == p0 { g } else { gen_matrix(p, word, prec) };
                trace::trace_axis(p, &g)
            }
            Geometry::Abstract => Err(Error::Validation(
                "curves cannot be traced on an abstract piece".into(),
            )),
        }
    }

    /// Canonical forms of the boundary curves.
    pub fn boundary_keys(&self) -> &[Vec<u16>] {
        &self.boundary_keys
    }

    /// Side words of the boundary curves, one per boundary component.
    pub(crate) fn boundary_side_words(&self) -> Vec<Vec<u16>> {
        let n = self.side_count();
        let partner = self.partner_table();
        let free: Vec<usize> = self.boundary_edges.clone();
        let mut done = vec![false; n];
        let mut out = vec![];
        for &f in &free {
            if done[f] {
                continue;
            }
            let mut word = vec![];
            let mut cur = f;
            loop {
                done[cur] = true;
                let cross = (cur + 1) % n;
                word.push(cross as u16);
                cur = (partner[cross] as usize + 1) % n;
                if cur == f || word.len() > 4 * n {
                    break;
                }
            }
            out.push(word);
        }
        out
    }
}

fn gen_matrix(p: &Polygon, word: &[GenLetter], prec: u32) -> Mat3 {
    let gens = p.generator_matrices(prec);
    p.word_matrix(word, &gens, prec)
}

/// A pants decomposition together with dual curves.
#[derive(Clone, Debug)]
pub struct PantsSystem {
    /// Interior pants curves followed by the boundary curves.
    pub pants_curves: Vec<EmbeddedCurve>,
    /// Dual curves `b_i`, one per interior pants curve.
    pub dual_curves: Vec<EmbeddedCurve>,
    /// For every pants curve the indices of the (one or two) pants it bounds.
    pub incidence: Vec<Vec<usize>>,
    /// Number of interior pants curves, `3g − 3 + n`.
    pub interior: usize,
    /// Generator words of the interior pants curves in the marking.
    pub marking: Option<Vec<Vec<GenLetter>>>,
}

impl PantsSystem {
    pub fn interior_curves(&self) -> &[EmbeddedCurve] {
        &self.pants_curves[..self.interior]
    }

    /// `{a_i} ∪ {b_i}`.
    pub fn filling_system(&self) -> Vec<EmbeddedCurve> {
        let mut v: Vec<EmbeddedCurve> = self.interior_curves().to_vec();
        v.extend(self.dual_curves.iter().cloned());
        v
    }
}

/// The oriented curve of slope `(p, q)` on the flat torus.
pub fn torus_curve(s: &Arc<CellSurface>, p: i64, q: i64) -> Result<EmbeddedCurve> {
    if !s.is_flat() {
        return Err(Error::Validation("slopes are only defined on the torus".into()));
    }
    let (mut x, mut y) = (p.unsigned_abs(), q.unsigned_abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    if x != 1 {
        return Err(Error::NotEssential(format!("({p},{q}) is not a primitive slope")));
    }
    let word: Vec<GenLetter> = std::iter::repeat((0, p.signum() as i8))
        .take(p.unsigned_abs() as usize)
        .chain(std::iter::repeat((1, q.signum() as i8)).take(q.unsigned_abs() as usize))
        .collect();
    EmbeddedCurve::from_gen_word(s, &word, true)
}

/// Homology class of an oriented curve in the preset basis.
pub fn homology_class(s: &CellSurface, c: &EmbeddedCurve) -> Result<Vec<i64>> {
    if c.surface().id() != s.id() {
        return Err(Error::SurfaceMismatch);
    }
    if !c.oriented {
        return Err(Error::Unoriented);
    }
    let v = s.abelianize(c.exits());
    // the basis has 2g + max(n − 1, 0) entries; for free groups every
    // generator is a basis element
    Ok(v)
}

/// Whether cutting along `c` disconnects the surface.
pub fn is_separating(s: &Arc<CellSurface>, c: &EmbeddedCurve) -> Result<bool> {
    c.require_essential()?;
    let cut = cut::cut_pieces(s, std::slice::from_ref(c), &[], false)?;
    let sep = cut.pieces.len() == 2;
    if s.boundary_count == 0 {
        let h = s.abelianize(c.exits());
        let null = h.iter().all(|&x| x == 0);
        if null != sep {
            return Err(Error::Geometry(
                "cut connectivity disagrees with homology".into(),
            ));
        }
    }
    Ok(sep)
}
