//! Cutting a surface open along disjoint simple closed curves.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arrangement::arrange;
use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::polygon::UnionFind;

use super::{CellSurface, Geometry};

/// Pieces of a cut surface and, for every registered curve, the piece that
/// contains it.
#[derive(Debug)]
pub struct CutResult {
    pub pieces: Vec<CellSurface>,
    pub transfer: Vec<usize>,
}

/// Cut along one essential simple curve.
pub fn cut_along(
    s: &Arc<CellSurface>,
    c: &EmbeddedCurve,
    registered: &[EmbeddedCurve],
) -> Result<CutResult> {
    cut_pieces(s, std::slice::from_ref(c), registered, true)
}

/// Cut along a family of pairwise disjoint, pairwise non-isotopic curves.
pub fn cut_along_multi(
    s: &Arc<CellSurface>,
    curves: &[EmbeddedCurve],
    registered: &[EmbeddedCurve],
) -> Result<CutResult> {
    cut_pieces(s, curves, registered, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Slot {
    /// Segment `j` of polygon side `k`.
    Segment(usize, usize),
    /// Free polygon side.
    Free(usize),
    /// One side of a cut chord: `(curve, chord, left side?)`.
    ChordSide(usize, usize, bool),
}

pub(crate) fn cut_pieces(
    s: &Arc<CellSurface>,
    curves: &[EmbeddedCurve],
    registered: &[EmbeddedCurve],
    strict: bool,
) -> Result<CutResult> {
    if s.is_abstract() {
        return Err(Error::Validation("cannot cut an abstract piece".into()));
    }
    for c in curves {
        c.require_essential()?;
        if c.surface().id() != s.id() {
            return Err(Error::SurfaceMismatch);
        }
    }
    for (i, c) in curves.iter().enumerate() {
        for d in &curves[..i] {
            if c.isotopic(d) {
                return Err(Error::Precondition("cut curves must be distinct".into()));
            }
        }
    }
    // registered curves isotopic to a cut curve are carried along it
    let mut reps: Vec<Option<usize>> = vec![None; registered.len()];
    let mut all: Vec<&EmbeddedCurve> = curves.iter().collect();
    for (i, r) in registered.iter().enumerate() {
        if let Some(k) = curves.iter().position(|c| c.isotopic(r)) {
            reps[i] = Some(k);
        } else if let Some(k) = registered[..i].iter().position(|o| o.isotopic(r)) {
            reps[i] = reps[k].or(Some(usize::MAX - k));
        } else {
            all.push(r);
        }
    }
    let arr = arrange(&all)?;
    let nc = curves.len();
    for a in 0..all.len() {
        for b in 0..nc.min(a) {
            if arr.crossing_count(a, b) > 0 {
                return Err(Error::Precondition(if a < nc {
                    "cut curves intersect".into()
                } else {
                    "a registered curve intersects the cut curve".into()
                }));
            }
        }
    }
    let n_sides = s.side_count();
    let partner = s.partner_table();
    // cut endpoints in perimeter order
    let is_cut = |r: usize| arr.owner[r].0 < nc;
    let cut_ranks: Vec<usize> = (0..arr.points).filter(|&r| is_cut(r)).collect();
    let k_pts = cut_ranks.len();
    let gap_index: HashMap<usize, usize> =
        cut_ranks.iter().enumerate().map(|(t, &r)| (r, t)).collect();
    let other_end = |r: usize| {
        let (ci, ch, is_exit) = arr.owner[r];
        let c = &arr.chords[ci][ch];
        if is_exit {
            c.entry
        } else {
            c.exit
        }
    };
    // gap t runs from cut point t to cut point t + 1
    let n_gaps = k_pts.max(1);
    let mut regions = UnionFind::new(n_gaps);
    for (t, &r) in cut_ranks.iter().enumerate() {
        let before = (t + k_pts - 1) % k_pts;
        let after_other = gap_index[&other_end(r)];
        regions.union(before, after_other);
    }
    // gap containing each rank and each vertex (start of a side)
    let gap_before_first = if k_pts == 0 { 0 } else { k_pts - 1 };
    let mut gap_of_rank = vec![0usize; arr.points];
    let mut vertex_gap = vec![0usize; n_sides];
    let mut seg_gap: Vec<Vec<usize>> = vec![vec![]; n_sides];
    {
        let mut cur = gap_before_first;
        let mut r = 0usize;
        for k in 0..n_sides {
            vertex_gap[k] = cur;
            seg_gap[k].push(cur);
            while r < arr.points && arr.side_of[r] as usize == k {
                if is_cut(r) {
                    cur = gap_index[&r];
                    seg_gap[k].push(cur);
                }
                gap_of_rank[r] = cur;
                r += 1;
            }
        }
    }
    // glue paired side segments
    let mut comps = UnionFind::new(n_gaps);
    for t in 0..n_gaps {
        comps.union(t, regions.find(t));
    }
    let mut segment_pairs = vec![];
    for &(k, j) in &s.edge_pairings {
        let c = seg_gap[k].len() - 1;
        if seg_gap[j].len() - 1 != c {
            return Err(Error::Geometry("unbalanced crossings on an edge".into()));
        }
        for i in 0..=c {
            comps.union(seg_gap[k][i], seg_gap[j][c - i]);
            segment_pairs.push(((k, i), (j, c - i)));
        }
    }
    // label components
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut comp_of_gap = vec![0usize; n_gaps];
    for t in 0..n_gaps {
        let root = comps.find(t);
        let next = label.len();
        comp_of_gap[t] = *label.entry(root).or_insert(next);
    }
    let n_comp = label.len();
    // transfer of registered curves
    let mut transfer = vec![0usize; registered.len()];
    let mut extra = nc;
    for (i, rep) in reps.iter().enumerate() {
        match rep {
            Some(k) if *k < nc => {
                // a copy pushed off to the left of the cut curve
                let ch = &arr.chords[*k][0];
                transfer[i] = comp_of_gap[gap_index[&ch.exit]];
            }
            Some(k) => transfer[i] = transfer[usize::MAX - k],
            None => {
                let ch = &arr.chords[extra][0];
                transfer[i] = comp_of_gap[gap_of_rank[ch.entry]];
                extra += 1;
            }
        }
    }
    // assemble the pieces as cell complexes
    let mut slot_ids: Vec<HashMap<Slot, usize>> = vec![HashMap::new(); n_comp];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![]; n_comp];
    let mut boundary: Vec<Vec<usize>> = vec![vec![]; n_comp];
    let mut region_done = vec![false; n_gaps];
    // perimeter items inside each gap
    let mut items: Vec<Vec<Slot>> = vec![vec![]; n_gaps];
    {
        for k in 0..n_sides {
            if partner[k] == u16::MAX {
                items[vertex_gap[k]].push(Slot::Free(k));
            } else {
                for (j, &g) in seg_gap[k].iter().enumerate() {
                    items[g].push(Slot::Segment(k, j));
                }
            }
        }
        // the gap before the first cut point wraps around the start
        if k_pts > 0 {
            let wrap = gap_before_first;
            let first_side = arr.side_of[cut_ranks[0]] as usize;
            let split = items[wrap]
                .iter()
                .position(|sl| match *sl {
                    Slot::Segment(k, _) | Slot::Free(k) => k > first_side || (k == first_side && matches!(sl, Slot::Segment(_, j) if *j > 0)),
                    _ => false,
                })
                .unwrap_or(items[wrap].len());
            let (head, tail) = items[wrap].split_at(split);
            let mut v = tail.to_vec();
            v.extend_from_slice(head);
            items[wrap] = v;
        }
    }
    for t0 in 0..n_gaps {
        let root = regions.find(t0);
        if region_done[root] {
            continue;
        }
        region_done[root] = true;
        let comp = comp_of_gap[t0];
        let mut face = vec![];
        let mut t = t0;
        loop {
            for sl in &items[t] {
                let id = slot_id(&mut slot_ids[comp], *sl);
                face.push(id);
                if matches!(sl, Slot::Free(_)) {
                    boundary[comp].push(id);
                }
            }
            if k_pts == 0 {
                break;
            }
            let end = cut_ranks[(t + 1) % k_pts];
            let (ci, ch, is_exit) = arr.owner[end];
            // arriving at an exit point means the region is on the chord's
            // right; at an entry point, on its left
            let sl = Slot::ChordSide(ci, ch, is_exit);
            let id = slot_id(&mut slot_ids[comp], sl);
            face.push(id);
            boundary[comp].push(id);
            t = gap_index[&other_end(end)];
            if t == t0 {
                break;
            }
        }
        faces[comp].push(face);
    }
    let mut pairings: Vec<Vec<(usize, usize)>> = vec![vec![]; n_comp];
    for ((k, i), (j, i2)) in segment_pairs {
        let comp = comp_of_gap[seg_gap[k][i]];
        let a = slot_ids[comp][&Slot::Segment(k, i)];
        let b = slot_ids[comp][&Slot::Segment(j, i2)];
        pairings[comp].push((a, b));
    }
    // boundary circles: old ones from free sides, new ones from chord sides
    let mut circles = vec![0usize; n_comp];
    for w in s.boundary_side_words() {
        // the free side before the first crossed side
        let free = (w[0] as usize + n_sides - 1) % n_sides;
        circles[comp_of_gap[vertex_gap[free]]] += 1;
    }
    for ci in 0..nc {
        let ch = &arr.chords[ci][0];
        circles[comp_of_gap[gap_index[&ch.exit]]] += 1;
        circles[comp_of_gap[gap_index[&ch.entry]]] += 1;
    }
    let mut pieces = vec![];
    for comp in 0..n_comp {
        let f = std::mem::take(&mut faces[comp]);
        let p = CellSurface::assemble(
            &format!("{}/piece{}", s.name, comp),
            0,
            circles[comp],
            f,
            std::mem::take(&mut pairings[comp]),
            std::mem::take(&mut boundary[comp]),
            s.chirality,
            s.generator_names.clone(),
            vec![],
            Geometry::Abstract,
            0.0,
        );
        let chi = p.euler_characteristic();
        let g2 = 2 - chi - circles[comp] as i64;
        if g2 < 0 || g2 % 2 != 0 {
            return Err(Error::Geometry(format!("piece {comp} has inconsistent topology")));
        }
        let mut p = p;
        p.genus = (g2 / 2) as usize;
        p.validate()?;
        if strict && chi >= 0 {
            return Err(Error::Precondition(format!(
                "piece {comp} would have Euler characteristic {chi}"
            )));
        }
        pieces.push(p);
    }
    Ok(CutResult { pieces, transfer })
}

fn slot_id(ids: &mut HashMap<Slot, usize>, sl: Slot) -> usize {
    let next = ids.len();
    *ids.entry(sl).or_insert(next)
}
