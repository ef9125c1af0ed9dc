//! Multi-precision scalars, Minkowski 3-vectors and Lorentz matrices.
//!
//! Hyperbolic geometry is done on the hyperboloid model `x² + y² − z² = −1`
//! and projected to the Klein disc, where geodesics are straight chords.
//! Closed geodesics of length `ℓ` lose about `1.44·ℓ` bits of accuracy when
//! traced around one period, so every computation carries an explicit MPFR
//! precision chosen by [`precision_for_length`].

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

pub type Real = Float;

/// Smallest precision ever used.
pub const BASE_PREC: u32 = 128;

/// Bits needed to follow a closed geodesic of (hyperbolic) length `len`
/// for one full period and still tell it apart from its own nearby strands.
pub fn precision_for_length(len: f64) -> u32 {
    let len = if len.is_finite() { len.max(0.0) } else { 1.0e5 };
    let bits = BASE_PREC as f64 + 3.0 * len;
    // round up to a multiple of 64 so caches keyed by precision stay small
    (((bits / 64.0).ceil() as u32) * 64).max(BASE_PREC)
}

pub fn real(prec: u32, v: f64) -> Real {
    Float::with_val(prec, v)
}

pub fn pi(prec: u32) -> Real {
    Float::with_val(prec, Constant::Pi)
}

pub fn sqrt(x: &Real) -> Real {
    x.clone().sqrt()
}

/// A vector in Minkowski space R^{2,1}.
#[derive(Clone, Debug)]
pub struct Vec3 {
    pub x: Real,
    pub y: Real,
    pub z: Real,
}

impl Vec3 {
    pub fn new(x: Real, y: Real, z: Real) -> Self {
        Vec3 { x, y, z }
    }

    pub fn prec(&self) -> u32 {
        self.x.prec()
    }

    pub fn from_f64(prec: u32, x: f64, y: f64, z: f64) -> Self {
        Vec3::new(real(prec, x), real(prec, y), real(prec, z))
    }

    /// Point of the hyperboloid above the Klein-disc point `(kx, ky)`.
    pub fn from_klein(kx: &Real, ky: &Real) -> Self {
        let prec = kx.prec();
        let r2 = kx.clone() * kx + &(ky.clone() * ky);
        let w = (real(prec, 1.0) - r2).sqrt();
        Vec3::new(kx.clone() / &w, ky.clone() / &w, real(prec, 1.0) / w)
    }

    /// `x·x' + y·y' − z·z'`.
    pub fn lorentz_dot(&self, o: &Vec3) -> Real {
        let mut s = self.x.clone() * &o.x;
        s += &(self.y.clone() * &o.y);
        s -= &(self.z.clone() * &o.z);
        s
    }

    /// Lorentz cross product: the vector `n` with `⟨n, u⟩ = ⟨n, v⟩ = 0`.
    pub fn lorentz_cross(&self, o: &Vec3) -> Vec3 {
        let cx = self.y.clone() * &o.z - &(self.z.clone() * &o.y);
        let cy = self.z.clone() * &o.x - &(self.x.clone() * &o.z);
        let cz = self.x.clone() * &o.y - &(self.y.clone() * &o.x);
        // Euclidean cross product followed by J = diag(1, 1, -1)
        Vec3::new(cx, cy, -cz)
    }

    pub fn sub(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            self.x.clone() - &o.x,
            self.y.clone() - &o.y,
            self.z.clone() - &o.z,
        )
    }

    pub fn scale(&self, s: &Real) -> Vec3 {
        Vec3::new(self.x.clone() * s, self.y.clone() * s, self.z.clone() * s)
    }

    /// Klein-disc coordinates `(x/z, y/z)`.
    pub fn klein(&self) -> (Real, Real) {
        (self.x.clone() / &self.z, self.y.clone() / &self.z)
    }

    /// Rescale a timelike vector onto the upper sheet `⟨v,v⟩ = −1`.
    pub fn normalize_timelike(&self) -> Vec3 {
        let n = (-self.lorentz_dot(self)).sqrt();
        let n = if self.z.is_sign_negative() { -n } else { n };
        Vec3::new(self.x.clone() / &n, self.y.clone() / &n, self.z.clone() / &n)
    }

    /// Rescale a (nonzero) vector so that its `z` coordinate is one.
    pub fn dehomogenize(&self) -> Vec3 {
        Vec3::new(
            self.x.clone() / &self.z,
            self.y.clone() / &self.z,
            real(self.prec(), 1.0),
        )
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    pub fn with_prec(&self, prec: u32) -> Vec3 {
        Vec3::new(
            Float::with_val(prec, &self.x),
            Float::with_val(prec, &self.y),
            Float::with_val(prec, &self.z),
        )
    }
}

/// Hyperbolic distance between two points of the hyperboloid.
pub fn distance(p: &Vec3, q: &Vec3) -> Real {
    let c = -p.lorentz_dot(q);
    let one = real(c.prec(), 1.0);
    if c < one {
        real(c.prec(), 0.0)
    } else {
        c.acosh()
    }
}

/// A 3×3 real matrix, used for elements of SO⁺(2,1).
#[derive(Clone, Debug)]
pub struct Mat3 {
    pub e: [[Real; 3]; 3],
}

impl Mat3 {
    pub fn identity(prec: u32) -> Self {
        let z = || real(prec, 0.0);
        let o = || real(prec, 1.0);
        Mat3 {
            e: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    pub fn from_rows(rows: [[Real; 3]; 3]) -> Self {
        Mat3 { e: rows }
    }

    pub fn prec(&self) -> u32 {
        self.e[0][0].prec()
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let prec = self.prec().max(o.prec());
        let mut out = Mat3::identity(prec);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Float::with_val(prec, &self.e[i][0] * &o.e[0][j]);
                s += &self.e[i][1] * &o.e[1][j];
                s += &self.e[i][2] * &o.e[2][j];
                out.e[i][j] = s;
            }
        }
        out
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let prec = self.prec().max(v.prec());
        let row = |i: usize| {
            let mut s = Float::with_val(prec, &self.e[i][0] * &v.x);
            s += &self.e[i][1] * &v.y;
            s += &self.e[i][2] * &v.z;
            s
        };
        Vec3::new(row(0), row(1), row(2))
    }

    /// Inverse of a Lorentz matrix: `J Mᵀ J`.
    pub fn lorentz_inverse(&self) -> Mat3 {
        let sign = |i: usize, j: usize| (i == 2) != (j == 2);
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                let v = self.e[j][i].clone();
                out.e[i][j] = if sign(i, j) { -v } else { v };
            }
        }
        out
    }

    pub fn trace(&self) -> Real {
        let mut t = self.e[0][0].clone();
        t += &self.e[1][1];
        t += &self.e[2][2];
        t
    }

    pub fn with_prec(&self, prec: u32) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = Float::with_val(prec, &self.e[i][j]);
            }
        }
        out
    }

    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.e[i][j].to_f64();
            }
        }
        out
    }

    /// Largest absolute entry, a cheap stand-in for the operator norm.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Translation length of a hyperbolic element of SO⁺(2,1): `tr = 1 + 2 cosh ℓ`.
pub fn translation_length(m: &Mat3) -> Option<Real> {
    let prec = m.prec();
    let t = m.trace();
    let arg = (t - real(prec, 1.0)) / real(prec, 2.0);
    if arg <= 1 {
        None
    } else {
        Some(arg.acosh())
    }
}

pub fn powi(x: &Real, n: i32) -> Real {
    x.clone().pow(n)
}

/// A 2×2 real matrix, used for elements of SL(2, R).
#[derive(Clone, Debug)]
pub struct Mat2 {
    pub a: Real,
    pub b: Real,
    pub c: Real,
    pub d: Real,
}

impl Mat2 {
    pub fn new(a: Real, b: Real, c: Real, d: Real) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(prec: u32) -> Self {
        Mat2::new(real(prec, 1.0), real(prec, 0.0), real(prec, 0.0), real(prec, 1.0))
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let p = self.prec().max(o.prec());
        let e = |x: &Real, y: &Real, z: &Real, w: &Real| {
            let mut s = Float::with_val(p, x * y);
            s += z * w;
            s
        };
        Mat2::new(
            e(&self.a, &o.a, &self.b, &o.c),
            e(&self.a, &o.b, &self.b, &o.d),
            e(&self.c, &o.a, &self.d, &o.c),
            e(&self.c, &o.b, &self.d, &o.d),
        )
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn det(&self) -> Real {
        self.a.clone() * &self.d - &(self.b.clone() * &self.c)
    }

    pub fn trace(&self) -> Real {
        self.a.clone() + &self.d
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(
            -self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [
            [self.a.to_f64(), self.b.to_f64()],
            [self.c.to_f64(), self.d.to_f64()],
        ]
    }

    /// The isometry of the hyperboloid induced by `X ↦ A X Aᵀ` on symmetric
    /// matrices `X = [[z + x, y], [y, z − x]]`. The point `i` of the upper
    /// half-plane goes to the centre of the disc.
    pub fn to_lorentz(&self) -> Mat3 {
        let p = self.prec();
        let basis = |j: usize| -> [[Real; 2]; 2] {
            let (o, z) = (real(p, 1.0), real(p, 0.0));
            match j {
                0 => [[o.clone(), z.clone()], [z, -o]],
                1 => [[z.clone(), o.clone()], [o, z]],
                _ => [[o.clone(), z.clone()], [z, o]],
            }
        };
        let m = [[&self.a, &self.b], [&self.c, &self.d]];
        let mut out = Mat3::identity(p);
        for j in 0..3 {
            let e = basis(j);
            // S = A E Aᵀ
            let mut ae = [[real(p, 0.0), real(p, 0.0)], [real(p, 0.0), real(p, 0.0)]];
            for r in 0..2 {
                for c in 0..2 {
                    ae[r][c] = m[r][0].clone() * &e[0][c] + &(m[r][1].clone() * &e[1][c]);
                }
            }
            let mut s = [[real(p, 0.0), real(p, 0.0)], [real(p, 0.0), real(p, 0.0)]];
            for r in 0..2 {
                for c in 0..2 {
                    s[r][c] = ae[r][0].clone() * m[c][0] + &(ae[r][1].clone() * m[c][1]);
                }
            }
            let two = real(p, 2.0);
            out.e[0][j] = (s[0][0].clone() - &s[1][1]) / &two;
            out.e[1][j] = s[0][1].clone();
            out.e[2][j] = (s[0][0].clone() + &s[1][1]) / &two;
        }
        out
    }
}
