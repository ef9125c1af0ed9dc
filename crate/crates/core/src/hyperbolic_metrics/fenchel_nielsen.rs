//! Fenchel–Nielsen holonomy for the genus-two theta gluing.
//!
//! Two pairs of pants `P`, `Q` with cuffs `c1, c2, c3` of lengths
//! `ℓ1, ℓ2, ℓ3` are glued cuff to cuff with twists `τ1, τ2, τ3`. The
//! fundamental group is generated by
//!
//! * `x`: the cuff `c1` of `P`,
//! * `y`: the cuff `c2` of `P`,
//! * `s`, `t`: stable letters across `c2` and `c3`,
//!
//! with the single relation `x⁻¹ s⁻¹ y⁻¹ s t⁻¹ x y t = 1`. The pants curves
//! are `x`, `y` and `xy` (the cuff `c3`).
//!
//! The one-holed torus and the four-holed sphere are built the same way
//! from one and two pants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{real, Mat2, Real};

pub const GENERATOR_NAMES: [&str; 4] = ["x", "y", "s", "t"];

/// The surface relation as a word in `x, y, s, t` (indices 0..4).
pub const RELATION: [(usize, i8); 8] = [
    (0, -1),
    (2, -1),
    (1, -1),
    (2, 1),
    (3, -1),
    (0, 1),
    (1, 1),
    (3, 1),
];

/// Lengths and twists of the three interior curves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FnParams {
    pub lengths: [f64; 3],
    pub twists: [f64; 3],
}

impl FnParams {
    pub fn validate(&self) -> Result<()> {
        for l in self.lengths {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Validation(format!("non-positive length {l}")));
            }
        }
        if self.twists.iter().any(|t| !t.is_finite()) {
            return Err(Error::Validation("non-finite twist".into()));
        }
        Ok(())
    }
}

/// Hyperbolic translation along the imaginary axis by `l` (upwards).
fn lift(l: &Real) -> Mat2 {
    let p = l.prec();
    let h = l.clone() / real(p, 2.0);
    let e = h.exp();
    let inv = real(p, 1.0) / &e;
    Mat2::new(e, real(p, 0.0), real(p, 0.0), inv)
}

/// Translation by `d` along the geodesic from −1 to 1.
fn across(d: &Real) -> Mat2 {
    let p = d.prec();
    let h = d.clone() / real(p, 2.0);
    let (sh, ch) = h.sinh_cosh(real(p, 0.0));
    Mat2::new(ch.clone(), sh.clone(), sh, ch)
}

/// Half-turn about `i`, which reverses the imaginary axis and swaps its sides.
fn flip(p: u32) -> Mat2 {
    Mat2::new(real(p, 0.0), real(p, -1.0), real(p, 1.0), real(p, 0.0))
}

/// A pair of pants with cuff elements `C1 C2 C3 = ±1` and frames `F_i`
/// such that `F_i⁻¹ C_i F_i` translates up the imaginary axis by `ℓ_i`
/// with the pants on the side `Re z > 0`.
struct Pants {
    cuffs: [Mat2; 3],
    frames: [Mat2; 3],
}

fn pants(lengths: &[Real; 3]) -> Result<Pants> {
    let p = lengths[0].prec();
    let half = |l: &Real| l.clone() / real(p, 2.0);
    let (s1, c1) = half(&lengths[0]).sinh_cosh(real(p, 0.0));
    let (s2, c2) = half(&lengths[1]).sinh_cosh(real(p, 0.0));
    let c3 = half(&lengths[2]).cosh();
    let cosh_d = (c3 + c1 * &c2) / (s1 * &s2);
    let d = cosh_d.acosh();
    let phi = across(&d);
    let cuff1 = lift(&lengths[0]);
    let cuff2 = phi.mul(&lift(&lengths[1]).inverse()).mul(&phi.inverse());
    let cuff3 = cuff1.mul(&cuff2).inverse();
    let frame1 = Mat2::identity(p);
    let frame2 = phi.mul(&flip(p));
    let frame3 = axis_frame(&cuff3)?;
    // the pants must lie on the right of every cuff in its frame
    let probe = |frame: &Mat2, point: &Mat2| -> bool {
        let m = frame.inverse().mul(point);
        // image of i under m, real part sign
        let num_re = m.a.clone() * &m.c + &(m.b.clone() * &m.d);
        num_re > 0
    };
    let foot2 = phi.clone();
    if !probe(&frame3, &Mat2::identity(p)) || !probe(&frame3, &foot2) {
        return Err(Error::Geometry("cuff orientation mismatch".into()));
    }
    Ok(Pants {
        cuffs: [cuff1, cuff2, cuff3],
        frames: [frame1, frame2, frame3],
    })
}

/// A frame `F` with `F⁻¹ M F = ±diag(λ, 1/λ)`, `λ > 1`.
fn axis_frame(m: &Mat2) -> Result<Mat2> {
    let p = m.prec();
    let m = if m.trace() < 0 { m.neg() } else { m.clone() };
    if m.c.is_zero() {
        return Err(Error::Geometry("cuff fixes infinity".into()));
    }
    // fixed points of z ↦ (az + b)/(cz + d): c z² + (d − a) z − b = 0
    let dma = m.d.clone() - &m.a;
    let disc = dma.clone() * &dma + &(real(p, 4.0) * &m.b * &m.c);
    if disc <= 0 {
        return Err(Error::Geometry("cuff is not hyperbolic".into()));
    }
    let sq = disc.sqrt();
    let two_c = real(p, 2.0) * &m.c;
    let r1 = (-dma.clone() + &sq) / &two_c;
    let r2 = (-dma - &sq) / &two_c;
    // attracting fixed point has derivative 1/(cz + d)² < 1
    let deriv = |z: &Real| {
        let w = m.c.clone() * z + &m.d;
        w.clone() * &w
    };
    let (att, rep) = if deriv(&r1) > deriv(&r2) { (r1, r2) } else { (r2, r1) };
    let det = att.clone() - &rep;
    let f = if det > 0 {
        let k = det.sqrt();
        Mat2::new(att / &k, rep / &k, real(p, 1.0) / &k, real(p, 1.0) / k)
    } else {
        let k = (-det).sqrt();
        Mat2::new(-att / &k, rep / &k, real(p, -1.0) / &k, real(p, 1.0) / k)
    };
    Ok(f)
}

/// The generators `[x, y, s, t]` at precision `prec`.
pub fn theta_generators(params: &FnParams, prec: u32) -> Result<[Mat2; 4]> {
    params.validate()?;
    let lengths = params.lengths.map(|l| real(prec, l));
    let twists = params.twists.map(|t| real(prec, t));
    let pa = pants(&lengths)?;
    let glue = |i: usize| pa.frames[i].mul(&lift(&twists[i])).mul(&flip(prec));
    // the second pants is the first one moved across c1
    let h = glue(0).mul(&pa.frames[0].inverse());
    let h_inv = h.inverse();
    let s = glue(1).mul(&pa.frames[1].inverse()).mul(&h_inv);
    let t = glue(2).mul(&pa.frames[2].inverse()).mul(&h_inv);
    Ok([pa.cuffs[0].clone(), pa.cuffs[1].clone(), s, t])
}

/// One-holed torus: cuffs `c1`, `c2` of a single pants glued with twist `τ`.
/// Returns `[X, S]` with `X` the interior curve and `S` the stable letter;
/// the boundary is `(X S⁻¹ X⁻¹ S)⁻¹`.
pub fn one_holed_torus_generators(length: f64, twist: f64, boundary: f64, prec: u32) -> Result<[Mat2; 2]> {
    check_lengths(&[length, boundary], twist)?;
    let l = real(prec, length);
    let pa = pants(&[l.clone(), l, real(prec, boundary)])?;
    let s = pa.frames[0]
        .mul(&lift(&real(prec, twist)))
        .mul(&flip(prec))
        .mul(&pa.frames[1].inverse());
    Ok([pa.cuffs[0].clone(), s])
}

/// Four-holed sphere: pants `(L1, L2, ℓ)` and `(ℓ, L3, L4)` glued along `ℓ`.
/// Returns `[u1, u2, u3]`; the boundaries are `u1, u2, u3` and
/// `(u1 u2 u3)⁻¹`, the interior curve is `u1 u2`.
pub fn four_holed_sphere_generators(
    length: f64,
    twist: f64,
    boundary: [f64; 4],
    prec: u32,
) -> Result<[Mat2; 3]> {
    check_lengths(&[length, boundary[0], boundary[1], boundary[2], boundary[3]], twist)?;
    let r = |x: f64| real(prec, x);
    let p = pants(&[r(boundary[0]), r(boundary[1]), r(length)])?;
    let q = pants(&[r(length), r(boundary[2]), r(boundary[3])])?;
    // carries the first cuff of Q onto the inverse of the third cuff of P
    let h = p.frames[2]
        .mul(&lift(&r(twist)))
        .mul(&flip(prec))
        .mul(&q.frames[0].inverse());
    let u3 = h.mul(&q.cuffs[1]).mul(&h.inverse());
    Ok([p.cuffs[0].clone(), p.cuffs[1].clone(), u3])
}

fn check_lengths(lengths: &[f64], twist: f64) -> Result<()> {
    if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::Validation(format!("non-positive length {l}")));
    }
    if !twist.is_finite() {
        return Err(Error::Validation("non-finite twist".into()));
    }
    Ok(())
}

/// Product of generator matrices along a signed word.
pub fn word_matrix(gens: &[Mat2], word: &[(usize, i8)]) -> Mat2 {
    let prec = gens.first().map_or(64, |g| g.prec());
    let mut m = Mat2::identity(prec);
    for &(g, s) in word {
        let f = if s > 0 { gens[g].clone() } else { gens[g].inverse() };
        m = m.mul(&f);
    }
    m
}

/// Length of the closed geodesic of a hyperbolic element: `2 acosh(|tr|/2)`.
pub fn length_of(m: &Mat2) -> Option<Real> {
    let tr = m.trace().abs();
    let half = tr / real(m.prec(), 2.0);
    if half <= 1 {
        None
    } else {
        Some(real(m.prec(), 2.0) * half.acosh())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> FnParams {
        FnParams {
            lengths: [2.0, 2.3, 2.7],
            twists: [0.3, -0.4, 1.1],
        }
    }

    #[test]
    fn relation_holds() {
        let g = theta_generators(&params(), 192).unwrap();
        let r = word_matrix(&g, &RELATION).to_f64();
        let sign = r[0][0].signum();
        assert!((r[0][0] - sign).abs() < 1e-30_f64.max(1e-40));
        assert!(r[0][1].abs() < 1e-30 && r[1][0].abs() < 1e-30);
        assert!((r[1][1] - sign).abs() < 1e-30);
    }

    #[test]
    fn cuff_traces() {
        let p = params();
        let g = theta_generators(&p, 128).unwrap();
        let xy = g[0].mul(&g[1]);
        for (m, l) in [(&g[0], p.lengths[0]), (&g[1], p.lengths[1]), (&xy, p.lengths[2])] {
            let tr = m.trace().to_f64().abs();
            assert!((tr - 2.0 * (l / 2.0).cosh()).abs() < 1e-20);
        }
    }

    fn close(m: &Mat2, l: f64) -> bool {
        (m.trace().to_f64().abs() - 2.0 * (l / 2.0).cosh()).abs() < 1e-12
    }

    #[test]
    fn one_holed_torus_traces() {
        let [x, s] = one_holed_torus_generators(1.7, 0.4, 2.9, 128).unwrap();
        assert!(close(&x, 1.7));
        // the glued cuff is conjugate to the inverse of the first one
        assert!(close(&s.inverse().mul(&x).mul(&s), 1.7));
        let comm = x.mul(&s.inverse()).mul(&x.inverse()).mul(&s);
        assert!(close(&comm, 2.9));
    }

    #[test]
    fn four_holed_sphere_traces() {
        let b = [1.1, 1.3, 1.7, 2.3];
        let [u1, u2, u3] = four_holed_sphere_generators(2.1, -0.6, b, 128).unwrap();
        assert!(close(&u1, b[0]) && close(&u2, b[1]) && close(&u3, b[2]));
        let p = u1.mul(&u2);
        assert!(close(&p, 2.1));
        assert!(close(&p.mul(&u3), b[3]));
    }
}
