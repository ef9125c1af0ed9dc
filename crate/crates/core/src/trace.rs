//! Cutting sequences of closed geodesics through a fundamental polygon.
//!
//! A closed geodesic is followed chord by chord through `P`: every time it
//! leaves through side `s` it is pulled back by `M_s⁻¹` and re-enters
//! through the partner side. The cyclic list of exit sides together with
//! the exact crossing positions is all the curve calculus needs: two
//! geodesic chords inside the convex polygon cross iff their endpoints
//! interleave along `∂P`.

use rug::Float;

use crate::error::{Error, Result};
use crate::hyperbolic::axis_endpoints;
use crate::numeric::{precision_for_length, real, translation_length, Mat3, Real, Vec3};
use crate::polygon::{Polygon, PolygonData};

/// A traced closed geodesic.
#[derive(Clone, Debug)]
pub struct RawTrace {
    /// Exit side of every chord.
    pub exits: Vec<u16>,
    /// Position of the exit point along the exit side, in `[0, 1]`.
    pub exit_pos: Vec<Real>,
    /// Position of the entry point of chord `i` along its entry side
    /// `partner(exits[i − 1])`.
    pub entry_pos: Vec<Real>,
    /// Number of times the input element wraps around the traced geodesic.
    pub power: usize,
    /// Length of the primitive geodesic.
    pub length: f64,
}

impl RawTrace {
    /// The same geodesic started at chord `k`.
    pub fn rotated(&self, k: usize) -> RawTrace {
        let rot = |v: &Vec<Real>| {
            let mut w = v[k..].to_vec();
            w.extend_from_slice(&v[..k]);
            w
        };
        let mut exits = self.exits[k..].to_vec();
        exits.extend_from_slice(&self.exits[..k]);
        RawTrace {
            exits,
            exit_pos: rot(&self.exit_pos),
            entry_pos: rot(&self.entry_pos),
            power: self.power,
            length: self.length,
        }
    }

    /// The geodesic traversed backwards. Chord `i` of the result is chord
    /// `m − 1 − i` of the input.
    pub fn reversed(&self, partner: impl Fn(u16) -> u16) -> RawTrace {
        let m = self.exits.len();
        let mut exits = Vec::with_capacity(m);
        let mut exit_pos = Vec::with_capacity(m);
        let mut entry_pos = Vec::with_capacity(m);
        for i in (0..m).rev() {
            let prev = (i + m - 1) % m;
            exits.push(partner(self.exits[prev]));
            exit_pos.push(self.entry_pos[i].clone());
            entry_pos.push(self.exit_pos[i].clone());
        }
        RawTrace {
            exits,
            exit_pos,
            entry_pos,
            power: self.power,
            length: self.length,
        }
    }
}

/// Working precision for multiplying out a word of `len` letters whose
/// side pairings move the centre by at most `step`.
pub fn word_precision(len: usize, step: f64) -> u32 {
    precision_for_length(len as f64 * step)
}

/// Klein point from a homogeneous vector.
fn kpoint(v: &Vec3) -> (Real, Real) {
    (v.x.clone() / &v.z, v.y.clone() / &v.z)
}

fn map_point(m: &Mat3, p: &(Real, Real)) -> (Real, Real) {
    let prec = p.0.prec();
    let v = Vec3::new(p.0.clone(), p.1.clone(), real(prec, 1.0));
    kpoint(&m.apply(&v))
}

/// Radial projection to the unit circle. Ideal points drift off the circle
/// at a rate `e^{2ℓ}` per period, against `e^{ℓ}` along it.
fn on_circle(p: (Real, Real)) -> (Real, Real) {
    let r = (p.0.clone().square() + &p.1.clone().square()).sqrt();
    (p.0 / &r, p.1 / r)
}

struct Hit {
    side: usize,
    lambda: Real,
    u: Real,
}

/// Intersection of the chord `a → b` with side `k` (segment `v_k → v_{k+1}`).
fn hit_exact(a: &(Real, Real), b: &(Real, Real), v0: &Vec3, v1: &Vec3, k: usize) -> Option<Hit> {
    let prec = a.0.prec();
    let dx = b.0.clone() - &a.0;
    let dy = b.1.clone() - &a.1;
    let ex = v1.x.clone() - &v0.x;
    let ey = v1.y.clone() - &v0.y;
    let den = dx.clone() * &ey - &(dy.clone() * &ex);
    if den.is_zero() {
        return None;
    }
    let wx = v0.x.clone() - &a.0;
    let wy = v0.y.clone() - &a.1;
    let lambda = (wx.clone() * &ey - &(wy.clone() * &ex)) / &den;
    let u = (wx * &dy - &(wy * &dx)) / &den;
    let _ = prec;
    Some(Hit { side: k, lambda, u })
}

fn hit_f64(a: [f64; 2], b: [f64; 2], v0: [f64; 2], v1: [f64; 2]) -> Option<(f64, f64)> {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let (ex, ey) = (v1[0] - v0[0], v1[1] - v0[1]);
    let den = dx * ey - dy * ex;
    if den == 0.0 {
        return None;
    }
    let (wx, wy) = (v0[0] - a[0], v0[1] - a[1]);
    Some(((wx * ey - wy * ex) / den, (wx * dy - wy * dx) / den))
}

/// Exit side of the chord `a → b` and the exact exit parameters.
fn exit_of(poly: &Polygon, data: &PolygonData, a: &(Real, Real), b: &(Real, Real)) -> Result<Hit> {
    const MARGIN: f64 = 1e-9;
    let n = data.vertices.len();
    let af = [a.0.to_f64(), a.1.to_f64()];
    let bf = [b.0.to_f64(), b.1.to_f64()];
    let mut best: Option<(usize, f64, f64)> = None;
    let mut second = f64::NEG_INFINITY;
    for k in 0..n {
        if poly.sides[k].partner.is_none() {
            continue;
        }
        let (v0, v1) = (data.vertices_f64[k], data.vertices_f64[(k + 1) % n]);
        if let Some((lam, u)) = hit_f64(af, bf, v0, v1) {
            if u > -MARGIN && u < 1.0 + MARGIN {
                match best {
                    Some((_, bl, _)) if bl >= lam => second = second.max(lam),
                    Some((_, bl, _)) => {
                        second = second.max(bl);
                        best = Some((k, lam, u));
                    }
                    None => best = Some((k, lam, u)),
                }
            }
        }
    }
    let clear = match best {
        Some((_, lam, u)) => u > MARGIN && u < 1.0 - MARGIN && lam - second > MARGIN,
        None => false,
    };
    if clear {
        let k = best.unwrap().0;
        return hit_exact(a, b, &data.vertices[k], &data.vertices[(k + 1) % n], k)
            .ok_or_else(|| Error::Geometry("degenerate exit".into()));
    }
    // close to a vertex: decide with the full precision
    let mut best: Option<Hit> = None;
    for k in 0..n {
        if poly.sides[k].partner.is_none() {
            continue;
        }
        if let Some(h) = hit_exact(a, b, &data.vertices[k], &data.vertices[(k + 1) % n], k) {
            if h.u >= 0 && h.u <= 1 {
                if best.as_ref().map_or(true, |bh| h.lambda > bh.lambda) {
                    best = Some(h);
                }
            }
        }
    }
    let h = best.ok_or_else(|| Error::Geometry("chord misses the polygon".into()))?;
    let eps = Float::with_val(h.u.prec(), Float::i_exp(1, -(data.prec as i32) / 2));
    if h.u < eps || h.u > real(data.prec, 1.0) - &eps {
        return Err(Error::Geometry("geodesic passes through a polygon vertex".into()));
    }
    Ok(h)
}

/// Position of a Klein point on side `k`, as a fraction of the side.
fn side_param(data: &PolygonData, k: usize, p: &(Real, Real)) -> Real {
    let n = data.vertices.len();
    let (v0, v1) = (&data.vertices[k], &data.vertices[(k + 1) % n]);
    let ex = v1.x.clone() - &v0.x;
    let ey = v1.y.clone() - &v0.y;
    let num = (p.0.clone() - &v0.x) * &ex + &((p.1.clone() - &v0.y) * &ey);
    let den = ex.clone() * &ex + &(ey.clone() * &ey);
    num / den
}

/// Trace the closed geodesic of the hyperbolic element `g` at the
/// precision of `g`.
pub fn trace_axis(poly: &Polygon, g: &Mat3) -> Result<RawTrace> {
    trace_axis_at(poly, g, g.prec())
}

/// Trace the closed geodesic of `g` at precision `prec`. The axis is found
/// at the precision of `g`, which may be higher.
pub fn trace_axis_at(poly: &Polygon, g: &Mat3, prec: u32) -> Result<RawTrace> {
    let high = poly.data(g.prec());
    let ell = translation_length(g)
        .ok_or_else(|| Error::NotEssential("element is not hyperbolic".into()))?;
    let ell_f = ell.to_f64();
    let (rep, att) =
        axis_endpoints(g).ok_or_else(|| Error::Geometry("no axis".into()))?;
    let mut a = kpoint(&rep);
    let mut b = kpoint(&att);
    // foot of the perpendicular from the centre, pushed into P; the axis of
    // a long word can start far out, so this runs at the precision of `g`
    let mut foot = {
        let dx = b.0.clone() - &a.0;
        let dy = b.1.clone() - &a.1;
        let lam = -(a.0.clone() * &dx + &(a.1.clone() * &dy)) / (dx.clone() * &dx + &(dy.clone() * &dy));
        (a.0.clone() + &(dx * &lam), a.1.clone() + &(dy * lam))
    };
    let mut guard = 0;
    loop {
        let fh = Vec3::new(foot.0.clone(), foot.1.clone(), real(g.prec(), 1.0));
        let mut worst: Option<(usize, Real)> = None;
        for (k, nrm) in high.normals.iter().enumerate() {
            if let Some(nrm) = nrm {
                let v = fh.lorentz_dot(nrm);
                if v < 0 && worst.as_ref().map_or(true, |(_, w)| v < *w) {
                    worst = Some((k, v));
                }
            }
        }
        let Some((k, _)) = worst else { break };
        let inv = &high.pairing_inv[k];
        a = map_point(inv, &a);
        b = map_point(inv, &b);
        foot = map_point(inv, &foot);
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Geometry("could not move the axis into the polygon".into()));
        }
    }
    let data = poly.data(prec);
    let lower = |p: (Real, Real)| (Float::with_val(prec, &p.0), Float::with_val(prec, &p.1));
    let mut a = lower(a);
    let mut b = lower(b);
    let tol = Float::with_val(prec, Float::i_exp(1, -(64 + (1.5 * ell_f) as i32)));
    let (a0, b0) = (a.clone(), b.clone());
    let max_steps = 1000 + (400.0 * ell_f.max(1.0)) as usize;
    let mut exits = vec![];
    let mut exit_pos = vec![];
    let mut entry_next = vec![];
    loop {
        let h = exit_of(poly, &data, &a, &b)?;
        let k = h.side;
        let dx = b.0.clone() - &a.0;
        let dy = b.1.clone() - &a.1;
        let x = (a.0.clone() + &(dx * &h.lambda), a.1.clone() + &(dy * &h.lambda));
        let inv = &data.pairing_inv[k];
        a = on_circle(map_point(inv, &a));
        b = on_circle(map_point(inv, &b));
        let y = map_point(inv, &x);
        let j = poly.sides[k].partner.expect("paired side");
        exits.push(k as u16);
        exit_pos.push(h.u);
        entry_next.push(side_param(&data, j, &y));
        let d = (a.0.clone() - &a0.0).abs()
            + &(a.1.clone() - &a0.1).abs()
            + &(b.0.clone() - &b0.0).abs()
            + &(b.1.clone() - &b0.1).abs();
        if d < tol {
            break;
        }
        if exits.len() > max_steps {
            log::trace!("no closure: ell {ell_f:.2} prec {prec} from {} bits, d {:e}", g.prec(), d.to_f64());
            return Err(Error::Geometry("geodesic did not close up".into()));
        }
    }
    let m = exits.len();
    let entry_pos: Vec<Real> = (0..m).map(|i| entry_next[(i + m - 1) % m].clone()).collect();
    // primitive root check
    let mut h = Mat3::identity(prec);
    for &s in &exits {
        h = h.mul(&data.pairing[s as usize]);
    }
    let lh = translation_length(&h)
        .ok_or_else(|| Error::Geometry("traced loop is not hyperbolic".into()))?
        .to_f64();
    let power = (ell_f / lh).round().max(1.0) as usize;
    Ok(RawTrace {
        exits,
        exit_pos,
        entry_pos,
        power,
        length: lh,
    })
}

/// Product of side pairings along a side word.
pub fn side_word_matrix(data: &PolygonData, word: &[u16]) -> Mat3 {
    let mut m = Mat3::identity(data.prec);
    for &s in word {
        m = m.mul(&data.pairing[s as usize]);
    }
    m
}

/// Trace a closed curve given by any side word, at a precision adequate for
/// the resulting geodesic (or `min_prec` if larger).
pub fn trace_side_word(poly: &Polygon, word: &[u16], step: f64, min_prec: u32) -> Result<RawTrace> {
    let word = reduce_side_word(poly, word);
    if word.is_empty() {
        return Err(Error::NotEssential("null-homotopic side word".into()));
    }
    // entries of the product grow like the length of the path, and the
    // axis is found by cancellation, so that length sets the precision
    let p0 = word_precision(word.len(), step).max(min_prec);
    let g = side_word_matrix(&poly.data(p0), &word);
    let ell = translation_length(&g)
        .ok_or_else(|| Error::NotEssential("word is not hyperbolic".into()))?
        .to_f64();
    let prec = precision_for_length(ell).max(min_prec);
    if prec > p0 {
        let g = side_word_matrix(&poly.data(prec), &word);
        return trace_axis(poly, &g);
    }
    trace_axis_at(poly, &g, prec)
}

/// Cancel backtracks `s, partner(s)`, cyclically.
fn reduce_side_word(poly: &Polygon, word: &[u16]) -> Vec<u16> {
    let partner = |s: u16| poly.sides[s as usize].partner.map(|p| p as u16);
    let mut out: Vec<u16> = Vec::with_capacity(word.len());
    for &s in word {
        match out.last() {
            Some(&t) if partner(t) == Some(s) => {
                out.pop();
            }
            _ => out.push(s),
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j > i + 1 && partner(out[j - 1]) == Some(out[i]) {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

// ---------------------------------------------------------------------------
// Flat torus
// ---------------------------------------------------------------------------

pub const FLAT_PREC: u32 = 256;

/// Offset of the shipped straight line in class `(p, q)`: the line
/// `q x − p y = c(p, q)` with `c = √2 p + √3 q`, which changes sign with
/// the class so both orientations give the same line.
fn flat_offset(p: i64, q: i64, prec: u32) -> Real {
    let s2 = real(prec, 2.0).sqrt();
    let s3 = real(prec, 3.0).sqrt();
    s2 * p + &(s3 * q)
}

fn frac(x: Real) -> Real {
    let f = x.clone().floor();
    x - f
}

/// Trace the straight line in the primitive class `(p, q)` through the unit
/// square with sides bottom, right, top, left.
pub fn trace_flat(p: i64, q: i64) -> Result<RawTrace> {
    let prec = FLAT_PREC;
    if p == 0 && q == 0 {
        return Err(Error::NotEssential("null-homologous torus class".into()));
    }
    let g = gcd(p.unsigned_abs(), q.unsigned_abs());
    let power = g as usize;
    let (p, q) = (p / g as i64, q / g as i64);
    let c = flat_offset(p, q, prec);
    // events (t, vertical?) along one period, starting on a grid line
    let mut events: Vec<(Real, bool)> = vec![];
    let (x0, y0);
    if p != 0 {
        x0 = real(prec, 0.0);
        y0 = frac(-c.clone() / p);
        for k in 1..=p.abs() {
            events.push((real(prec, k as f64) / p.abs(), true));
        }
        if q > 0 {
            for n in 1..=q {
                events.push(((real(prec, n as f64) - &y0) / q, false));
            }
        } else if q < 0 {
            for m in 0..q.abs() {
                events.push(((y0.clone() + m) / q.abs(), false));
            }
        }
    } else {
        y0 = real(prec, 0.0);
        x0 = frac(c.clone() / q);
        events.push((real(prec, 1.0), false));
    }
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let one = real(prec, 1.0);
    let mut exits = vec![];
    let mut exit_pos = vec![];
    let mut entry_next = vec![];
    for (t, vertical) in events {
        let x = frac(x0.clone() + &(t.clone() * p));
        let y = frac(y0.clone() + &(t * q));
        let (side, u, u_in) = if vertical {
            if p > 0 {
                (1u16, y.clone(), one.clone() - &y)
            } else {
                (3u16, one.clone() - &y, y)
            }
        } else if q > 0 {
            (2u16, one.clone() - &x, x)
        } else {
            (0u16, x.clone(), one.clone() - &x)
        };
        exits.push(side);
        exit_pos.push(u);
        entry_next.push(u_in);
    }
    let m = exits.len();
    let entry_pos = (0..m).map(|i| entry_next[(i + m - 1) % m].clone()).collect();
    Ok(RawTrace {
        exits,
        exit_pos,
        entry_pos,
        power,
        length: ((p * p + q * q) as f64).sqrt(),
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
