//! Simple closed curves as cutting sequences of closed geodesics.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::polygon::GenLetter;
use crate::surface_model::CellSurface;
use crate::trace::RawTrace;

/// Start index of the lexicographically least rotation.
pub fn least_rotation(s: &[u16]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j) % n.max(1)
}

pub fn rotate<T: Clone>(s: &[T], k: usize) -> Vec<T> {
    let mut v = s[k..].to_vec();
    v.extend_from_slice(&s[..k]);
    v
}

/// Rotation `k` with `rotate(from, k) == to`, if any.
pub fn find_rotation(from: &[u16], to: &[u16]) -> Option<usize> {
    if from.len() != to.len() {
        return None;
    }
    let n = from.len();
    (0..n).find(|&k| (0..n).all(|i| from[(k + i) % n] == to[i]))
}

/// Exit sequence of the reversed curve.
pub fn reverse_exits(exits: &[u16], partner: &[u16]) -> Vec<u16> {
    let m = exits.len();
    (0..m)
        .rev()
        .map(|i| partner[exits[(i + m - 1) % m] as usize])
        .collect()
}

fn canonical_oriented(exits: &[u16]) -> Vec<u16> {
    rotate(exits, least_rotation(exits))
}

/// A simple closed curve on a surface, held as the cutting sequence of its
/// geodesic representative.
#[derive(Clone)]
pub struct EmbeddedCurve {
    surface: Arc<CellSurface>,
    /// Exit sides in the curve's direction, least rotation.
    exits: Arc<Vec<u16>>,
    /// Canonical form over both directions.
    key: Arc<Vec<u16>>,
    pub oriented: bool,
    length: f64,
    peripheral: bool,
}

impl std::fmt::Debug for EmbeddedCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Curve({}{:?})",
            if self.oriented { "+" } else { "" },
            self.exits
        )
    }
}

impl PartialEq for EmbeddedCurve {
    fn eq(&self, o: &Self) -> bool {
        self.surface.id() == o.surface.id()
            && self.oriented == o.oriented
            && self.exits == o.exits
    }
}

impl Eq for EmbeddedCurve {}

impl std::hash::Hash for EmbeddedCurve {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.surface.id().hash(h);
        self.exits.hash(h);
    }
}

impl EmbeddedCurve {
    /// Build a curve from a traced geodesic, checking that it is primitive
    /// and simple. Peripheral (boundary-parallel) curves are rejected unless
    /// `allow_peripheral` is set.
    pub(crate) fn from_trace(
        surface: &Arc<CellSurface>,
        raw: RawTrace,
        prec: u32,
        oriented: bool,
        allow_peripheral: bool,
    ) -> Result<EmbeddedCurve> {
        if raw.power != 1 {
            return Err(Error::Precondition(format!(
                "closed curve is a {}-fold power, not simple",
                raw.power
            )));
        }
        if !chords_simple(surface, &raw) {
            return Err(Error::Precondition("closed curve is not simple".into()));
        }
        let partner = surface.partner_table();
        let k = least_rotation(&raw.exits);
        let exits = rotate(&raw.exits, k);
        let rev = canonical_oriented(&reverse_exits(&exits, &partner));
        let key = if rev < exits { rev } else { exits.clone() };
        let peripheral = surface.boundary_keys.iter().any(|b| *b == key);
        if peripheral && !allow_peripheral {
            return Err(Error::NotEssential("curve is boundary-parallel".into()));
        }
        let _ = prec;
        let length = raw.length;
        let (exits, oriented) = if oriented { (exits, true) } else { (key.clone(), false) };
        Ok(EmbeddedCurve {
            surface: surface.clone(),
            exits: Arc::new(exits),
            key: Arc::new(key),
            oriented,
            length,
            peripheral,
        })
    }

    /// The curve homotopic to a closed path given by its exit sides.
    pub fn from_side_word(
        surface: &Arc<CellSurface>,
        word: &[u16],
        oriented: bool,
    ) -> Result<EmbeddedCurve> {
        let n = surface.side_count() as u16;
        if word.iter().any(|&s| s >= n || surface.partner(s as usize).is_none()) {
            return Err(Error::Validation("side word uses an unpaired side".into()));
        }
        let prec = crate::numeric::BASE_PREC;
        let raw = surface.trace_raw(word, prec)?;
        EmbeddedCurve::from_trace(surface, raw, prec, oriented, false)
    }

    /// The curve of a word in the surface generators.
    pub fn from_gen_word(
        surface: &Arc<CellSurface>,
        word: &[GenLetter],
        oriented: bool,
    ) -> Result<EmbeddedCurve> {
        let ng = surface.generator_names.len();
        if word.iter().any(|&(g, e)| g >= ng || (e != 1 && e != -1)) {
            return Err(Error::Validation("bad generator letter".into()));
        }
        let raw = surface.trace_gen_word(word)?;
        EmbeddedCurve::from_trace(surface, raw, 0, oriented, false)
    }

    /// Boundary curves are allowed to be peripheral.
    pub(crate) fn peripheral_from_side_word(
        surface: &Arc<CellSurface>,
        word: &[u16],
    ) -> Result<EmbeddedCurve> {
        let raw = surface.trace_raw(word, crate::numeric::BASE_PREC)?;
        EmbeddedCurve::from_trace(surface, raw, 0, true, true)
    }

    /// A curve with known canonical exits (trusted, e.g. from JSON after
    /// retracing).
    pub fn from_exits(
        surface: &Arc<CellSurface>,
        exits: &[u16],
        oriented: bool,
    ) -> Result<EmbeddedCurve> {
        let c = EmbeddedCurve::from_side_word(surface, exits, oriented)?;
        let given = canonical_oriented(exits);
        let partner = surface.partner_table();
        let rev = canonical_oriented(&reverse_exits(exits, &partner));
        if *c.key != given && *c.key != rev {
            return Err(Error::Validation(
                "exit sequence is not the cutting sequence of a geodesic".into(),
            ));
        }
        Ok(c)
    }

    pub fn surface(&self) -> &Arc<CellSurface> {
        &self.surface
    }

    /// Exit sides in the curve's direction (canonical rotation).
    pub fn exits(&self) -> &[u16] {
        &self.exits
    }

    /// Canonical form ignoring orientation.
    pub fn key(&self) -> &[u16] {
        &self.key
    }

    /// Number of chords of the geodesic inside the polygon.
    pub fn itinerary_len(&self) -> usize {
        self.exits.len()
    }

    /// Length of the geodesic in the model geometry.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_peripheral(&self) -> bool {
        self.peripheral
    }

    pub fn require_essential(&self) -> Result<()> {
        if self.peripheral {
            Err(Error::NotEssential("curve is boundary-parallel".into()))
        } else {
            Ok(())
        }
    }

    pub fn require_oriented(&self) -> Result<()> {
        if self.oriented {
            Ok(())
        } else {
            Err(Error::Unoriented)
        }
    }

    /// The same curve with the opposite orientation.
    pub fn reversed(&self) -> EmbeddedCurve {
        if !self.oriented {
            return self.clone();
        }
        let partner = self.surface.partner_table();
        let rev = canonical_oriented(&reverse_exits(&self.exits, &partner));
        EmbeddedCurve {
            exits: Arc::new(rev),
            ..self.clone()
        }
    }

    /// Forget the orientation.
    pub fn unoriented(&self) -> EmbeddedCurve {
        EmbeddedCurve {
            exits: self.key.clone(),
            oriented: false,
            ..self.clone()
        }
    }

    /// Give the curve an orientation (the current one if it has one, the
    /// canonical one otherwise).
    pub fn oriented(&self) -> EmbeddedCurve {
        EmbeddedCurve {
            oriented: true,
            ..self.clone()
        }
    }

    /// Same free homotopy class, ignoring orientation.
    pub fn isotopic(&self, o: &EmbeddedCurve) -> bool {
        self.surface.id() == o.surface.id() && self.key == o.key
    }

    /// Same class with the same orientation (both oriented).
    pub fn same_oriented(&self, o: &EmbeddedCurve) -> bool {
        self.surface.id() == o.surface.id() && self.exits == o.exits
    }

    /// Exit sides of the curve traversed from chord `k` in direction `dir`.
    pub(crate) fn loop_from(&self, chord: usize, forward: bool, partner: &[u16]) -> Vec<u16> {
        let m = self.exits.len();
        if forward {
            (0..m).map(|i| self.exits[(chord + i) % m]).collect()
        } else {
            (0..m)
                .map(|i| partner[self.exits[(chord + 2 * m - 1 - i) % m] as usize])
                .collect()
        }
    }

    pub(crate) fn trace(&self, prec: u32) -> Result<Arc<RawTrace>> {
        self.surface.trace_of(&self.exits, prec)
    }

    /// Edge itinerary: `(edge, position index, direction)` per
    /// crossing, positions ranked among the crossings of `others` and
    /// this curve on the same edge.
    pub fn itinerary(&self, others: &[&EmbeddedCurve]) -> Result<Vec<(usize, usize, i8)>> {
        let mut all: Vec<&EmbeddedCurve> = vec![self];
        all.extend_from_slice(others);
        let orders = per_edge_orders(&all)?;
        let s = &self.surface;
        let mut out = vec![];
        for (i, &side) in self.exits.iter().enumerate() {
            let (edge, reference) = s.edge_of_side(side as usize);
            let idx = orders[edge]
                .iter()
                .position(|&(c, ch)| c == 0 && ch == i)
                .expect("crossing present");
            out.push((edge, idx, if reference { 1 } else { -1 }));
        }
        Ok(out)
    }
}

fn chords_simple(surface: &CellSurface, raw: &RawTrace) -> bool {
    let m = raw.exits.len();
    let partner = surface.partner_table();
    let mut pts: Vec<(u16, &Real, usize)> = Vec::with_capacity(2 * m);
    for i in 0..m {
        let entry_side = partner[raw.exits[(i + m - 1) % m] as usize];
        pts.push((entry_side, &raw.entry_pos[i], i));
        pts.push((raw.exits[i], &raw.exit_pos[i], i));
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal)));
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return false;
        }
    }
    let mut stack: Vec<usize> = vec![];
    let mut open = vec![false; m];
    for &(_, _, c) in &pts {
        if open[c] {
            if stack.pop() != Some(c) {
                return false;
            }
        } else {
            open[c] = true;
            stack.push(c);
        }
    }
    true
}

/// For every edge, the crossings of all curves in the order of the edge's
/// reference side: `(curve index, chord index)`.
pub fn per_edge_orders(curves: &[&EmbeddedCurve]) -> Result<Vec<Vec<(usize, usize)>>> {
    let s = curves[0].surface().clone();
    let longest = curves.iter().map(|c| c.length()).fold(0.0, f64::max);
    let prec = s.pair_precision(longest, longest);
    let mut lists: Vec<Vec<(Real, usize, usize)>> = vec![vec![]; s.edge_pairings.len()];
    for (ci, c) in curves.iter().enumerate() {
        let t = c.trace(prec)?;
        for (i, &side) in c.exits().iter().enumerate() {
            let (edge, reference) = s.edge_of_side(side as usize);
            let pos = if reference {
                t.exit_pos[i].clone()
            } else {
                // the same point seen from the reference side is the entry
                // of the next chord
                t.entry_pos[(i + 1) % t.exits.len()].clone()
            };
            lists[edge].push((pos, ci, i));
        }
    }
    Ok(lists
        .into_iter()
        .map(|mut l| {
            l.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
            l.into_iter().map(|(_, c, i)| (c, i)).collect()
        })
        .collect())
}

/// JSON-friendly description of a curve.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveRecord {
    pub exits: Vec<u16>,
    pub oriented: bool,
}

impl From<&EmbeddedCurve> for CurveRecord {
    fn from(c: &EmbeddedCurve) -> Self {
        CurveRecord {
            exits: c.exits().to_vec(),
            oriented: c.oriented,
        }
    }
}
