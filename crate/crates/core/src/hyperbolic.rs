//! Isometries of the hyperbolic plane as Lorentz matrices.

use rug::Float;

use crate::numeric::{pi, real, Mat3, Real, Vec3};

/// Rotation by `theta` about the centre of the disc.
pub fn rotation(theta: &Real) -> Mat3 {
    let prec = theta.prec();
    let (s, c) = theta.clone().sin_cos(real(prec, 0.0));
    let z = || real(prec, 0.0);
    Mat3::from_rows([
        [c.clone(), -s.clone(), z()],
        [s, c, z()],
        [z(), z(), real(prec, 1.0)],
    ])
}

/// Translation by hyperbolic distance `d` along the x-axis (towards +x).
pub fn boost_x(d: &Real) -> Mat3 {
    let prec = d.prec();
    let (sh, ch) = d.clone().sinh_cosh(real(prec, 0.0));
    let z = || real(prec, 0.0);
    Mat3::from_rows([
        [ch.clone(), z(), sh.clone()],
        [z(), real(prec, 1.0), z()],
        [sh, z(), ch],
    ])
}

/// Rotation by `pi` about the point at hyperbolic distance `d` from the centre
/// in direction `theta`.
pub fn half_turn(theta: &Real, d: &Real) -> Mat3 {
    let prec = theta.prec();
    let r = rotation(theta);
    let r_inv = rotation(&(-theta.clone()));
    let t = boost_x(d);
    let t_inv = boost_x(&(-d.clone()));
    let flip = rotation(&pi(prec));
    r.mul(&t).mul(&flip).mul(&t_inv).mul(&r_inv)
}

/// Orthonormal frame at `p` whose first tangent vector points to `q`.
/// Columns are (tangent, normal, position) so the frame maps the origin's
/// standard frame onto it.
fn frame(p: &Vec3, q: &Vec3) -> Mat3 {
    let p = p.normalize_timelike();
    let pq = p.lorentz_dot(q);
    // q + <q,p> p is tangent at p
    let mut t = Vec3::new(
        q.x.clone() + &(p.x.clone() * &pq),
        q.y.clone() + &(p.y.clone() * &pq),
        q.z.clone() + &(p.z.clone() * &pq),
    );
    let tn = t.lorentz_dot(&t).sqrt();
    t = Vec3::new(t.x / &tn, t.y / &tn, t.z / &tn);
    let mut n = p.lorentz_cross(&t);
    let nn = n.lorentz_dot(&n).sqrt();
    n = Vec3::new(n.x / &nn, n.y / &nn, n.z / &nn);
    let m = Mat3::from_rows([
        [t.x.clone(), n.x.clone(), p.x.clone()],
        [t.y.clone(), n.y.clone(), p.y.clone()],
        [t.z.clone(), n.z.clone(), p.z.clone()],
    ]);
    if det(&m) < 0 {
        Mat3::from_rows([
            [t.x, -n.x, p.x],
            [t.y, -n.y, p.y],
            [t.z, -n.z, p.z],
        ])
    } else {
        m
    }
}

fn det(m: &Mat3) -> Real {
    let e = &m.e;
    let a = e[1][1].clone() * &e[2][2] - &(e[1][2].clone() * &e[2][1]);
    let b = e[1][0].clone() * &e[2][2] - &(e[1][2].clone() * &e[2][0]);
    let c = e[1][0].clone() * &e[2][1] - &(e[1][1].clone() * &e[2][0]);
    e[0][0].clone() * a - &(e[0][1].clone() * b) + &(e[0][2].clone() * c)
}

/// The orientation preserving isometry taking `p` to `p2` and the direction
/// towards `q` to the direction towards `q2`.
pub fn isometry_between(p: &Vec3, q: &Vec3, p2: &Vec3, q2: &Vec3) -> Mat3 {
    let f1 = frame(p, q);
    let f2 = frame(p2, q2);
    f2.mul(&f1.lorentz_inverse())
}

/// Endpoints `(repelling, attracting)` on the unit circle of the axis of a
/// hyperbolic element, as points with `z = 1`.
pub fn axis_endpoints(m: &Mat3) -> Option<(Vec3, Vec3)> {
    let prec = m.prec();
    let l = crate::numeric::translation_length(m)?;
    let lam = l.exp();
    let lam_inv = real(prec, 1.0) / &lam;
    // eigenvectors of M for eigenvalues lam and 1/lam are null vectors
    let attracting = null_eigenvector(m, &lam)?;
    let repelling = null_eigenvector(m, &lam_inv)?;
    Some((repelling.dehomogenize(), attracting.dehomogenize()))
}

fn null_eigenvector(m: &Mat3, lam: &Real) -> Option<Vec3> {
    // rows of (M - lam I); the eigenvector is the cross product of two
    // independent rows, pick the pair with the largest cross product.
    let prec = m.prec();
    let mut rows: Vec<[Float; 3]> = Vec::with_capacity(3);
    for i in 0..3 {
        let mut r = [m.e[i][0].clone(), m.e[i][1].clone(), m.e[i][2].clone()];
        r[i] -= lam;
        rows.push(r);
    }
    let cross = |a: &[Float; 3], b: &[Float; 3]| {
        [
            a[1].clone() * &b[2] - &(a[2].clone() * &b[1]),
            a[2].clone() * &b[0] - &(a[0].clone() * &b[2]),
            a[0].clone() * &b[1] - &(a[1].clone() * &b[0]),
        ]
    };
    let mut best: Option<[Float; 3]> = None;
    let mut best_norm = real(prec, 0.0);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&rows[i], &rows[j]);
        let n = c[0].clone().abs().max(&c[1].clone().abs()).max(&c[2].clone().abs());
        if n > best_norm {
            best_norm = n;
            best = Some(c);
        }
    }
    let c = best?;
    if c[2].is_zero() {
        return None;
    }
    let [x, y, z] = c;
    Some(Vec3::new(x, y, z))
}

/// Point on the hyperboloid at hyperbolic distance `d` from the centre in
/// direction `theta`.
pub fn polar_point(theta: &Real, d: &Real) -> Vec3 {
    let prec = theta.prec();
    let (s, c) = theta.clone().sin_cos(real(prec, 0.0));
    let (sh, ch) = d.clone().sinh_cosh(real(prec, 0.0));
    Vec3::new(c * &sh, s * &sh, ch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn half_turn_is_involution() {
        let prec = 128;
        let h = half_turn(&real(prec, 0.7), &real(prec, 1.3));
        let hh = h.mul(&h);
        let id = Mat3::identity(prec);
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(&hh.e[i][j], id.e[i][j].to_f64(), 1e-25));
            }
        }
    }

    #[test]
    fn isometry_between_maps_points() {
        let prec = 160;
        let p = polar_point(&real(prec, 0.3), &real(prec, 0.5));
        let q = polar_point(&real(prec, 2.0), &real(prec, 1.1));
        let m = isometry_between(&p, &q, &q, &p);
        let img = m.apply(&p);
        let d = crate::numeric::distance(&img, &q);
        assert!(d.to_f64() < 1e-20);
        let img2 = m.apply(&q);
        assert!(crate::numeric::distance(&img2, &p).to_f64() < 1e-20);
    }

    #[test]
    fn boost_axis_is_the_x_axis() {
        let prec = 128;
        let m = boost_x(&real(prec, 2.0));
        let (rep, att) = axis_endpoints(&m).unwrap();
        assert!(close(&att.x, 1.0, 1e-20) && close(&att.y, 0.0, 1e-20));
        assert!(close(&rep.x, -1.0, 1e-20));
        let l = crate::numeric::translation_length(&m).unwrap();
        assert!(close(&l, 2.0, 1e-20));
    }
}
