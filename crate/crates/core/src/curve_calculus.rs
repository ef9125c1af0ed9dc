//! Intersection numbers, crossing patterns and isotopy of simple curves.
//!
//! Curves are stored as closed geodesics of the preset metric, and distinct
//! simple closed geodesics never bound a bigon, so their crossings are
//! already minimal. [`PathCurve`] gives access to non-geodesic polygonal
//! representatives, on which bigons can actually occur.

use std::sync::Arc;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::arrangement::{arrange, arrange_traces, Planar};
use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::surface_model::CellSurface;
use crate::trace::RawTrace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPattern {
    /// Crossing points in the order met along `a`, with signs.
    pub along_a: Vec<(usize, i32)>,
    /// The same points in the order met along `b`.
    pub along_b: Vec<(usize, i32)>,
    /// Consecutive pairs along `a`, cyclically.
    pub adjacency: Vec<(usize, usize)>,
}

impl IntersectionPattern {
    pub fn algebraic(&self) -> i32 {
        self.along_a.iter().map(|p| p.1).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTag {
    Disjoint,
    OnePoint,
    TwoZero,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClass {
    pub tag: PairTag,
    pub count: usize,
}

impl PairClass {
    pub fn is_terminal(&self) -> bool {
        self.tag != PairTag::Other
    }
}

fn check_pair(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<()> {
    a.require_essential()?;
    b.require_essential()?;
    if a.surface().id() != b.surface().id() {
        return Err(Error::SurfaceMismatch);
    }
    Ok(())
}

/// Representatives of `a` and `b` realising `I(a, b)`: the geodesics.
pub fn minimal_position(
    a: &EmbeddedCurve,
    b: &EmbeddedCurve,
) -> Result<(EmbeddedCurve, EmbeddedCurve)> {
    check_pair(a, b)?;
    if !a.isotopic(b) {
        // fails if the geodesics share a point on a polygon side
        arrange(&[a, b])?;
    }
    Ok((a.clone(), b.clone()))
}

pub fn geometric_intersection(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<usize> {
    check_pair(a, b)?;
    if a.isotopic(b) {
        return Ok(0);
    }
    Ok(arrange(&[a, b])?.crossing_count(0, 1))
}

/// Signed count; `+1` at a point where `b` crosses `a` from right to left.
pub fn algebraic_intersection(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<i64> {
    check_pair(a, b)?;
    a.require_oriented()?;
    b.require_oriented()?;
    if a.isotopic(b) {
        return Ok(0);
    }
    let chi = a.surface().chirality.sign();
    let arr = arrange(&[a, b])?;
    Ok(arr.crossings(0, 1, chi).iter().map(|x| x.sign as i64).sum())
}

/// Crossing points in their cyclic orders along both curves. Unoriented
/// curves are read in their stored direction.
pub fn intersection_pattern(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<IntersectionPattern> {
    check_pair(a, b)?;
    if a.isotopic(b) {
        return Ok(IntersectionPattern {
            along_a: vec![],
            along_b: vec![],
            adjacency: vec![],
        });
    }
    let chi = a.surface().chirality.sign();
    let arr = arrange(&[a, b])?;
    let xs = arr.along(0, 1, chi);
    let along_a: Vec<(usize, i32)> = xs.iter().enumerate().map(|(i, x)| (i, x.sign)).collect();
    let along_b = arr
        .along(1, 0, chi)
        .iter()
        .map(|y| {
            let id = xs
                .iter()
                .position(|x| x.chord_a == y.chord_b && x.chord_b == y.chord_a)
                .expect("crossing seen from both curves");
            (id, xs[id].sign)
        })
        .collect();
    let n = along_a.len();
    let adjacency = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(IntersectionPattern {
        along_a,
        along_b,
        adjacency,
    })
}

pub fn classify_pair(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<PairClass> {
    let pat = intersection_pattern(a, b)?;
    let count = pat.along_a.len();
    let tag = match count {
        0 => PairTag::Disjoint,
        1 => PairTag::OnePoint,
        2 if pat.algebraic() == 0 => PairTag::TwoZero,
        _ => PairTag::Other,
    };
    Ok(PairClass { tag, count })
}

pub fn curves_isotopic(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<bool> {
    check_pair(a, b)?;
    Ok(a.isotopic(b))
}

/// A closed polygonal path: one straight chord per visit of the polygon,
/// with freely chosen crossing points on the sides. Homotopic to the
/// geodesic with the same cutting sequence, but possibly not tight.
#[derive(Clone, Debug)]
pub struct PathCurve {
    surface: Arc<CellSurface>,
    chords: RawTrace,
}

impl PathCurve {
    /// The geodesic itself, as a path.
    pub fn from_curve(c: &EmbeddedCurve, prec: u32) -> Result<PathCurve> {
        Ok(PathCurve {
            surface: c.surface().clone(),
            chords: c.trace(prec)?.as_ref().clone(),
        })
    }

    pub fn exits(&self) -> &[u16] {
        &self.chords.exits
    }

    pub fn crossing_count(&self, other: &PathCurve) -> Result<usize> {
        if self.surface.id() != other.surface.id() {
            return Err(Error::SurfaceMismatch);
        }
        Ok(arrange_traces(&self.surface, &[&self.chords, &other.chords])?.crossing_count(0, 1))
    }

    /// Slide the exit point of chord `i` along its side past the nearest
    /// crossing point of `other` (towards the end of the side when
    /// `forward`). The two chords at that point then sweep across the
    /// adjacent chords of `other`, creating or removing a bigon.
    pub fn finger_move(&self, i: usize, other: &PathCurve, forward: bool) -> Result<PathCurve> {
        let m = self.chords.exits.len();
        let side = self.chords.exits[i];
        let here = self.chords.exit_pos[i].clone();
        let nxt = (i + 1) % m;
        // crossing points of both paths on `side`, paired with their
        // images on the partner side
        let mut pts: Vec<(Float, Float, bool)> = vec![];
        for (path, mine) in [(&self.chords, true), (&other.chords, false)] {
            let k = path.exits.len();
            for j in 0..k {
                if path.exits[j] == side {
                    pts.push((
                        path.exit_pos[j].clone(),
                        path.entry_pos[(j + 1) % k].clone(),
                        mine,
                    ));
                }
            }
        }
        pts.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite positions"));
        let at = pts.iter().position(|p| p.0 == here).expect("own point");
        let step = |j: usize| -> Option<usize> {
            if forward {
                (j + 1 < pts.len()).then_some(j + 1)
            } else {
                j.checked_sub(1)
            }
        };
        let target = step(at).ok_or_else(|| Error::Precondition("no point to slide past".into()))?;
        if pts[target].2 {
            return Err(Error::Precondition(
                "the nearest point belongs to the moving path".into(),
            ));
        }
        let prec = here.prec();
        let (lo_exit, lo_entry) = match step(target) {
            Some(j) => (pts[j].0.clone(), pts[j].1.clone()),
            None if forward => (Float::with_val(prec, 1), Float::with_val(prec, 0)),
            None => (Float::with_val(prec, 0), Float::with_val(prec, 1)),
        };
        let mut out = self.clone();
        out.chords.exit_pos[i] = (pts[target].0.clone() + &lo_exit) / 2u32;
        out.chords.entry_pos[nxt] = (pts[target].1.clone() + &lo_entry) / 2u32;
        Ok(out)
    }

    /// The geodesic in the homotopy class of the path.
    pub fn tighten(&self, oriented: bool) -> Result<EmbeddedCurve> {
        EmbeddedCurve::from_side_word(&self.surface, &self.chords.exits, oriented)
    }
}

/// Tighten two paths to their geodesics, removing every bigon.
pub fn minimal_position_paths(
    a: &PathCurve,
    b: &PathCurve,
) -> Result<(EmbeddedCurve, EmbeddedCurve)> {
    let ta = a.tighten(true)?;
    let tb = b.tighten(true)?;
    minimal_position(&ta, &tb)
}

/// Whether the union of `curves` fills the surface: every complementary
/// region is a disc or a collar of one boundary circle.
///
/// Regions are found by tracing the faces of the chord arrangement inside
/// the polygon and gluing them across paired sides; the union fills iff
/// the number of regions is `2 − 2g + X`, `X` the number of crossings.
pub fn fills(curves: &[EmbeddedCurve]) -> Result<bool> {
    let Some(first) = curves.first() else {
        return Ok(false);
    };
    let s = first.surface().clone();
    if s.is_abstract() {
        return Err(Error::Validation("cannot test filling on an abstract piece".into()));
    }
    let mut distinct: Vec<&EmbeddedCurve> = vec![];
    for c in curves {
        check_pair(first, c)?;
        if !distinct.iter().any(|d| d.isotopic(c)) {
            distinct.push(c);
        }
    }
    let arr = arrange(&distinct)?;
    let planar = Planar::new(&arr, &s);
    let n_sides = s.side_count();
    // global chord list
    let chords: Vec<_> = arr.chords.iter().flatten().cloned().collect();
    let mut chord_of_rank = vec![0usize; arr.points];
    for (g, c) in chords.iter().enumerate() {
        chord_of_rank[c.entry] = g;
        chord_of_rank[c.exit] = g;
    }
    // crossings along every chord, ordered from its entry
    let mut along: Vec<Vec<(Float, usize)>> = vec![vec![]; chords.len()];
    let mut crossings = 0usize;
    for g in 0..chords.len() {
        for h in 0..chords.len() {
            if h == g || !chords[g].crosses(&chords[h]) {
                continue;
            }
            if h > g {
                crossings += 1;
            }
            along[g].push((planar.param(&chords[g], &chords[h]), h));
        }
        along[g].sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        if along[g].windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Geometry("three geodesics through one point".into()));
        }
    }
    let index_on = |g: usize, h: usize| along[g].iter().position(|p| p.1 == h).expect("crossing");
    // perimeter items: corner k (start of side k) then the ranks on side k
    let mut items: Vec<Option<usize>> = vec![];
    let mut item_of_rank = vec![0usize; arr.points];
    let mut seg_side: Vec<(usize, usize)> = vec![];
    let mut per_side = vec![0usize; n_sides];
    {
        let mut r = 0;
        for k in 0..n_sides {
            items.push(None);
            seg_side.push((k, 0));
            while r < arr.points && arr.side_of[r] as usize == k {
                item_of_rank[r] = items.len();
                items.push(Some(r));
                per_side[k] += 1;
                seg_side.push((k, per_side[k]));
                r += 1;
            }
        }
    }
    let n_items = items.len();
    // trace the faces touching the perimeter, turning left everywhere
    let mut face_of_seg = vec![usize::MAX; n_items];
    let mut faces = 0usize;
    for start in 0..n_items {
        if face_of_seg[start] != usize::MAX {
            continue;
        }
        let mut seg = start;
        loop {
            face_of_seg[seg] = faces;
            let next = (seg + 1) % n_items;
            seg = match items[next] {
                None => next,
                Some(r) => {
                    let mut g = chord_of_rank[r];
                    let mut fwd = chords[g].entry == r;
                    let mut idx: isize = if fwd { 0 } else { along[g].len() as isize - 1 };
                    loop {
                        if idx < 0 || idx as usize >= along[g].len() {
                            let end = if fwd { chords[g].exit } else { chords[g].entry };
                            break item_of_rank[end];
                        }
                        let h = along[g][idx as usize].1;
                        let right = |q: usize| chords[g].on_right(q);
                        let target = if right(chords[h].entry) != fwd {
                            chords[h].entry
                        } else {
                            chords[h].exit
                        };
                        let at = index_on(h, g) as isize;
                        fwd = target == chords[h].exit;
                        idx = if fwd { at + 1 } else { at - 1 };
                        g = h;
                    }
                }
            };
            if seg == start {
                break;
            }
            if face_of_seg[seg] != usize::MAX {
                return Err(Error::Geometry("face tracing did not close up".into()));
            }
        }
        faces += 1;
    }
    let total_faces = 1 + chords.len() + crossings;
    let interior_faces = total_faces - faces;
    let mut uf = crate::polygon::UnionFind::new(faces);
    let partner = s.partner_table();
    let mut seg_index: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for (i, &ks) in seg_side.iter().enumerate() {
        seg_index.insert(ks, i);
    }
    for k in 0..n_sides {
        let j = partner[k];
        if j == u16::MAX || (j as usize) < k {
            continue;
        }
        let c = per_side[k];
        for i in 0..=c {
            let a = seg_index[&(k, i)];
            let b = seg_index[&(j as usize, c - i)];
            uf.union(face_of_seg[a], face_of_seg[b]);
        }
    }
    // a region may contain at most one boundary circle
    let mut collars = std::collections::HashSet::new();
    for w in s.boundary_side_words() {
        let free = (w[0] as usize + n_sides - 1) % n_sides;
        if !collars.insert(uf.find(face_of_seg[seg_index[&(free, 0)]])) {
            return Ok(false);
        }
    }
    let glued = (0..faces).filter(|&f| uf.find(f) == f).count();
    let regions = glued + interior_faces;
    Ok(regions as i64 == 2 - 2 * s.genus as i64 + crossings as i64)
}
