//! Joint combinatorics of several geodesics inside the polygon.
//!
//! All chord endpoints of the given curves are sorted along `∂P`
//! (counter-clockwise: side by side, then by position along the side) and
//! replaced by their ranks. Crossings, signs and orders along curves are
//! then read off from integer comparisons.

use std::cmp::Ordering;

use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::surface_model::CellSurface;
use crate::trace::RawTrace;

#[derive(Clone, Debug)]
pub struct Chord {
    pub entry: usize,
    pub exit: usize,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    /// Total number of endpoints (ranks run over `0..points`).
    pub points: usize,
    /// Chords of every curve, in the curve's direction.
    pub chords: Vec<Vec<Chord>>,
    /// Side of every rank.
    pub side_of: Vec<u16>,
    /// For every rank: `(curve, chord, is_exit)`.
    pub owner: Vec<(usize, usize, bool)>,
    /// Position of every rank along its side.
    pub pos: Vec<Real>,
}

/// One crossing between two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub chord_a: usize,
    pub chord_b: usize,
    /// +1 when `b` crosses `a` from right to left (times the chirality).
    pub sign: i32,
}

impl Chord {
    /// Whether rank `r` lies on the counter-clockwise arc from entry to exit
    /// (the right-hand side of the chord).
    pub fn on_right(&self, r: usize) -> bool {
        if self.entry < self.exit {
            r > self.entry && r < self.exit
        } else {
            r > self.entry || r < self.exit
        }
    }

    pub fn crosses(&self, o: &Chord) -> bool {
        self.on_right(o.entry) != self.on_right(o.exit)
    }

    /// Offset of `r` counter-clockwise from the entry point.
    pub fn offset(&self, r: usize, n: usize) -> usize {
        (r + n - self.entry) % n
    }
}

/// Arrange pairwise non-isotopic curves, all traced at a common precision.
pub fn arrange(curves: &[&EmbeddedCurve]) -> Result<Arrangement> {
    let s = curves[0].surface().clone();
    for c in curves {
        if c.surface().id() != s.id() {
            return Err(Error::SurfaceMismatch);
        }
    }
    // endpoints of different curves are separated relative to the two
    // longest lengths
    let mut lens: Vec<f64> = curves.iter().map(|c| c.length()).collect();
    lens.sort_by(|x, y| y.total_cmp(x));
    let prec = s.pair_precision(lens[0], lens.get(1).copied().unwrap_or(lens[0]));
    let traces = curves
        .iter()
        .map(|c| c.trace(prec))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&RawTrace> = traces.iter().map(|t| t.as_ref()).collect();
    arrange_traces(&s, &refs)
}

/// Arrange explicit chord systems (geodesic traces or polygonal paths).
pub fn arrange_traces(s: &CellSurface, traces: &[&RawTrace]) -> Result<Arrangement> {
    let partner = s.partner_table();
    let mut pts: Vec<(u16, &Real, usize, usize, bool)> = vec![];
    for (ci, t) in traces.iter().enumerate() {
        let m = t.exits.len();
        for i in 0..m {
            let entry_side = partner[t.exits[(i + m - 1) % m] as usize];
            pts.push((entry_side, &t.entry_pos[i], ci, i, false));
            pts.push((t.exits[i], &t.exit_pos[i], ci, i, true));
        }
    }
    pts.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
    });
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return Err(Error::Geometry(
                "two geodesics meet on a polygon side".into(),
            ));
        }
    }
    let mut chords: Vec<Vec<Chord>> = traces
        .iter()
        .map(|t| vec![Chord { entry: 0, exit: 0 }; t.exits.len()])
        .collect();
    let mut side_of = Vec::with_capacity(pts.len());
    let mut owner = Vec::with_capacity(pts.len());
    let mut pos = Vec::with_capacity(pts.len());
    for (r, &(side, u, ci, i, is_exit)) in pts.iter().enumerate() {
        pos.push(u.clone());
        if is_exit {
            chords[ci][i].exit = r;
        } else {
            chords[ci][i].entry = r;
        }
        side_of.push(side);
        owner.push((ci, i, is_exit));
    }
    Ok(Arrangement {
        points: pts.len(),
        chords,
        side_of,
        owner,
        pos,
    })
}

impl Arrangement {
    /// All crossings between curves `a` and `b` with signs, unordered.
    pub fn crossings(&self, a: usize, b: usize, chirality: i32) -> Vec<Crossing> {
        let mut out = vec![];
        for (i, ca) in self.chords[a].iter().enumerate() {
            for (j, cb) in self.chords[b].iter().enumerate() {
                if ca.crosses(cb) {
                    let sign = if ca.on_right(cb.entry) { 1 } else { -1 };
                    out.push(Crossing {
                        chord_a: i,
                        chord_b: j,
                        sign: sign * chirality,
                    });
                }
            }
        }
        out
    }

    pub fn crossing_count(&self, a: usize, b: usize) -> usize {
        let mut n = 0;
        for ca in &self.chords[a] {
            for cb in &self.chords[b] {
                if ca.crosses(cb) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Crossings sorted along curve `a` (chord by chord, then from the
    /// chord's entry towards its exit).
    pub fn along(&self, a: usize, b: usize, chirality: i32) -> Vec<Crossing> {
        let mut xs = self.crossings(a, b, chirality);
        let n = self.points;
        let key = |x: &Crossing| {
            let ca = &self.chords[a][x.chord_a];
            let cb = &self.chords[b][x.chord_b];
            let r = if ca.on_right(cb.entry) { cb.entry } else { cb.exit };
            (x.chord_a, ca.offset(r, n))
        };
        xs.sort_by_key(key);
        xs
    }
}

/// Chord endpoints placed in a model where chords are straight segments,
/// for ordering crossings with several curves along one chord.
pub struct Planar {
    points: Vec<(Real, Real)>,
}

impl Planar {
    pub fn new(arr: &Arrangement, s: &CellSurface) -> Planar {
        let prec = arr.pos.first().map_or(64, |p| p.prec());
        let corners = s.planar_vertices(prec);
        let n = corners.len();
        let points = (0..arr.points)
            .map(|r| {
                let k = arr.side_of[r] as usize;
                let (a, b) = (&corners[k], &corners[(k + 1) % n]);
                let u = &arr.pos[r];
                (
                    a.0.clone() + &(u.clone() * &(b.0.clone() - &a.0)),
                    a.1.clone() + &(u.clone() * &(b.1.clone() - &a.1)),
                )
            })
            .collect();
        Planar { points }
    }

    /// Parameter in `[0, 1]` of the crossing of chord `g` with chord `h`,
    /// measured along `g` from its entry.
    pub fn param(&self, g: &Chord, h: &Chord) -> Real {
        let (e, x) = (&self.points[g.entry], &self.points[g.exit]);
        let (p, q) = (&self.points[h.entry], &self.points[h.exit]);
        let d1 = (x.0.clone() - &e.0, x.1.clone() - &e.1);
        let d2 = (q.0.clone() - &p.0, q.1.clone() - &p.1);
        let den = d1.0.clone() * &d2.1 - &(d1.1.clone() * &d2.0);
        let num = (p.0.clone() - &e.0) * &d2.1 - &((p.1.clone() - &e.1) * &d2.0);
        num / den
    }
}
