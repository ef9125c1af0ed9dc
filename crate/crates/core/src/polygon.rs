//! Fundamental polygons with side pairings.
//!
//! A surface is presented as a single polygon `P` in the Klein disc (or the
//! unit square for the flat torus) whose sides are glued in pairs. Sides are
//! listed counter-clockwise; side `k` runs from vertex `k` to vertex `k + 1`.
//! The pairing element `M_k` of a paired side maps `P` onto the tile adjacent
//! across side `k` and carries the partner side onto side `k` with reversed
//! direction. Free sides (arcs at infinity of a Schottky domain) become the
//! boundary edges of the surface.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::numeric::{real, Mat3, Real, Vec3};

/// A letter of the base presentation: generator index and sign (`±1`).
pub type GenLetter = (usize, i8);

/// Free reduction of a word in the base generators.
pub fn free_reduce(word: &[GenLetter]) -> Vec<GenLetter> {
    let mut out: Vec<GenLetter> = Vec::with_capacity(word.len());
    for &l in word {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 == -l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

pub fn invert_word(word: &[GenLetter]) -> Vec<GenLetter> {
    word.iter().rev().map(|&(g, s)| (g, -s)).collect()
}

#[derive(Clone, Debug)]
pub struct Side {
    /// Partner side for paired sides, `None` for free (boundary) sides.
    pub partner: Option<usize>,
    /// The pairing element as a word in the base generators.
    pub word: Vec<GenLetter>,
}

/// How vertices and side lines are computed at a given precision.
#[derive(Clone, Debug)]
pub enum Construction {
    /// Dirichlet domain centred at the Klein point `center`; side `k` is
    /// the bisector of `center` and `M_k(center)`.
    Dirichlet { center: (f64, f64) },
    /// Sides are disjoint chords perpendicular to direction `angles[i]` at
    /// Klein distance `offset`; free arcs sit between consecutive chords.
    Chords { angles: Vec<f64>, offset: f64 },
    /// Unit square for the flat torus.
    Square,
}

/// Geometry of the polygon evaluated at one precision.
#[derive(Debug)]
pub struct PolygonData {
    pub prec: u32,
    /// Start vertex of every side (Klein coordinates, `z = 1`).
    pub vertices: Vec<Vec3>,
    /// Pairing matrices (identity placeholder for free sides).
    pub pairing: Vec<Mat3>,
    /// Inverse pairing matrices.
    pub pairing_inv: Vec<Mat3>,
    /// f64 copies of the vertices for fast side selection.
    pub vertices_f64: Vec<[f64; 2]>,
    /// Side lines as Minkowski normals, positive on the interior of `P`
    /// (`None` for free sides and for the flat square).
    pub normals: Vec<Option<Vec3>>,
}

/// Generator matrices of the base presentation at a requested precision.
pub type GeneratorFn = dyn Fn(u32) -> Vec<Mat3> + Send + Sync;

pub struct Polygon {
    pub sides: Vec<Side>,
    pub construction: Construction,
    pub generator_names: Vec<String>,
    generators: Arc<GeneratorFn>,
    cache: Mutex<HashMap<u32, Arc<PolygonData>>>,
}

impl std::fmt::Debug for Polygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Polygon")
            .field("sides", &self.sides)
            .field("construction", &self.construction)
            .finish()
    }
}

impl Polygon {
    pub fn new(
        sides: Vec<Side>,
        construction: Construction,
        generator_names: Vec<String>,
        generators: Arc<GeneratorFn>,
    ) -> Self {
        Polygon {
            sides,
            construction,
            generator_names,
            generators,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    pub fn partner(&self, side: usize) -> Option<usize> {
        self.sides[side].partner
    }

    pub fn generator_matrices(&self, prec: u32) -> Vec<Mat3> {
        (self.generators)(prec)
    }

    /// Matrix of a base-generator word.
    pub fn word_matrix(&self, word: &[GenLetter], gens: &[Mat3], prec: u32) -> Mat3 {
        let mut m = Mat3::identity(prec);
        for &(g, s) in word {
            let factor = if s > 0 {
                gens[g].clone()
            } else {
                gens[g].lorentz_inverse()
            };
            m = m.mul(&factor);
        }
        m
    }

    /// Polygon geometry at precision `prec` (cached).
    pub fn data(&self, prec: u32) -> Arc<PolygonData> {
        if let Some(d) = self.cache.lock().get(&prec) {
            return d.clone();
        }
        let d = Arc::new(self.compute(prec));
        self.cache.lock().insert(prec, d.clone());
        d
    }

    fn compute(&self, prec: u32) -> PolygonData {
        let n = self.sides.len();
        let gens = self.generator_matrices(prec);
        let pairing: Vec<Mat3> = self
            .sides
            .iter()
            .map(|s| match s.partner {
                Some(_) => self.word_matrix(&s.word, &gens, prec),
                None => Mat3::identity(prec),
            })
            .collect();
        let pairing_inv: Vec<Mat3> = pairing.iter().map(|m| m.lorentz_inverse()).collect();
        let mut normals: Vec<Option<Vec3>> = vec![None; n];
        let vertices: Vec<Vec3> = match &self.construction {
            Construction::Dirichlet { center } => {
                let c = Vec3::from_klein(&real(prec, center.0), &real(prec, center.1));
                let lines: Vec<Vec3> = pairing.iter().map(|m| c.sub(&m.apply(&c))).collect();
                let verts = (0..n)
                    .map(|k| {
                        let prev = &lines[(k + n - 1) % n];
                        let v = prev.lorentz_cross(&lines[k]);
                        v.dehomogenize()
                    })
                    .collect();
                for (k, l) in lines.into_iter().enumerate() {
                    normals[k] = Some(l);
                }
                verts
            }
            Construction::Chords { angles, offset } => {
                // side list alternates chord, free arc, chord, free arc, ...
                let phi = real(prec, *offset).acos();
                let mut v = Vec::with_capacity(n);
                for (i, a) in angles.iter().enumerate() {
                    // interior: X cos a + Y sin a < offset
                    let (sa, ca) = real(prec, *a).sin_cos(real(prec, 0.0));
                    normals[2 * i] = Some(Vec3::new(-ca, -sa, -real(prec, *offset)));
                    let a = real(prec, *a);
                    for t in [a.clone() - &phi, a + &phi] {
                        let (s, c) = t.sin_cos(real(prec, 0.0));
                        v.push(Vec3::new(c, s, real(prec, 1.0)));
                    }
                }
                v
            }
            Construction::Square => [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
                .iter()
                .map(|&(x, y)| Vec3::from_f64(prec, x, y, 1.0))
                .collect(),
        };
        let vertices_f64 = vertices
            .iter()
            .map(|v| [v.x.to_f64(), v.y.to_f64()])
            .collect();
        PolygonData {
            prec,
            vertices,
            pairing,
            pairing_inv,
            vertices_f64,
            normals,
        }
    }

    /// Vertex classes: `class[k]` is the class of the start vertex of side `k`.
    pub fn vertex_classes(&self) -> Vec<usize> {
        let n = self.sides.len();
        let mut uf = UnionFind::new(n);
        for (k, s) in self.sides.iter().enumerate() {
            if let Some(j) = s.partner {
                uf.union(k, (j + 1) % n);
                uf.union((k + 1) % n, j);
            }
        }
        let mut ids = HashMap::new();
        (0..n)
            .map(|k| {
                let r = uf.find(k);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Sequence of sides crossed while walking once around the vertex at
    /// the start of side `k`. The product of their pairings is the identity.
    pub fn vertex_cycle(&self, k: usize) -> Vec<usize> {
        let n = self.sides.len();
        let mut out = vec![];
        let mut cur = k;
        loop {
            out.push(cur);
            let j = match self.sides[cur].partner {
                Some(j) => j,
                None => break,
            };
            cur = (j + 1) % n;
            if cur == k || out.len() > 4 * n {
                break;
            }
        }
        out
    }

    /// Euler characteristic of the quotient, counting each free side as a
    /// boundary edge.
    pub fn euler_characteristic(&self) -> i64 {
        let classes = self.vertex_classes();
        let v = classes.iter().copied().max().map_or(0, |m| m + 1) as i64;
        let paired = self.sides.iter().filter(|s| s.partner.is_some()).count() as i64 / 2;
        let free = self.sides.iter().filter(|s| s.partner.is_none()).count() as i64;
        v - (paired + free) + 1
    }

    /// Number of boundary circles formed by the free sides.
    pub fn boundary_components(&self) -> usize {
        let n = self.sides.len();
        let classes = self.vertex_classes();
        let free: Vec<usize> = (0..n).filter(|&k| self.sides[k].partner.is_none()).collect();
        if free.is_empty() {
            return 0;
        }
        let mut uf = UnionFind::new(n);
        let mut by_class: HashMap<usize, Vec<usize>> = HashMap::new();
        for &k in &free {
            by_class.entry(classes[k]).or_default().push(k);
            by_class.entry(classes[(k + 1) % n]).or_default().push(k);
        }
        for list in by_class.values() {
            for w in list.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut roots: Vec<usize> = free.iter().map(|&k| uf.find(k)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

// ---------------------------------------------------------------------------
// Dirichlet domains
// ---------------------------------------------------------------------------

type M3 = [[f64; 3]; 3];

fn m3_mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

fn m3_apply(a: &M3, v: [f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

fn klein_lift(x: f64, y: f64) -> [f64; 3] {
    let w = (1.0 - x * x - y * y).sqrt();
    [x / w, y / w, 1.0 / w]
}

fn ldot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

/// One enumerated group element.
#[derive(Clone, Debug)]
pub struct Element {
    pub word: Vec<GenLetter>,
    pub matrix: [[f64; 3]; 3],
    pub image: [f64; 3],
    pub distance: f64,
}

/// All elements `g` with `d(c, g c) ≤ radius`, found by a breadth-first
/// search that is allowed to wander `slack` further than `radius`.
pub fn enumerate_orbit(
    gens: &[Mat3],
    center: (f64, f64),
    radius: f64,
    slack: f64,
) -> Vec<Element> {
    enumerate_orbit_capped(gens, center, radius, slack, usize::MAX).expect("uncapped")
}

/// [`enumerate_orbit`], giving up once more than `cap` elements were seen.
pub fn enumerate_orbit_capped(
    gens: &[Mat3],
    center: (f64, f64),
    radius: f64,
    slack: f64,
    cap: usize,
) -> Result<Vec<Element>> {
    let c = klein_lift(center.0, center.1);
    let mut letters: Vec<(GenLetter, M3)> = vec![];
    for (i, g) in gens.iter().enumerate() {
        letters.push(((i, 1), g.to_f64()));
        letters.push(((i, -1), g.lorentz_inverse().to_f64()));
    }
    let key = |p: [f64; 3]| ((p[0] * 1e4).round() as i64, (p[1] * 1e4).round() as i64);
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    let mut all = vec![Element {
        word: vec![],
        matrix: id,
        image: c,
        distance: 0.0,
    }];
    seen.insert(key(c), 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = vec![];
        for idx in frontier {
            let base = all[idx].clone();
            for (l, m) in &letters {
                let mat = m3_mul(&base.matrix, m);
                let img = m3_apply(&mat, c);
                let d = (-ldot(c, img)).max(1.0).acosh();
                if d > radius + slack {
                    continue;
                }
                let k = key(img);
                if seen.contains_key(&k) {
                    continue;
                }
                let mut word = base.word.clone();
                word.push(*l);
                let word = free_reduce(&word);
                if all.len() >= cap {
                    return Err(Error::Budget(format!(
                        "more than {cap} orbit points within {:.2}",
                        radius + slack
                    )));
                }
                seen.insert(k, all.len());
                next.push(all.len());
                all.push(Element {
                    word,
                    matrix: mat,
                    image: img,
                    distance: d,
                });
            }
        }
        frontier = next;
    }
    all.retain(|e| e.distance <= radius);
    all.sort_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap());
    Ok(all)
}

/// Orbit size at which the Dirichlet construction gives up.
const ORBIT_CAP: usize = 300_000;

/// Dirichlet domain of a cocompact group centred at the Klein point `center`.
/// Returns the sides (counter-clockwise) with their pairing words.
pub fn dirichlet_sides(gens: &[Mat3], center: (f64, f64)) -> Result<Vec<Side>> {
    let c = klein_lift(center.0, center.1);
    let mut radius = 6.0;
    for _attempt in 0..4 {
        let elems = enumerate_orbit_capped(gens, center, radius, 4.0, ORBIT_CAP)?;
        // polygon as list of (vertex, element index of the side starting there)
        let mut poly: Vec<([f64; 2], Option<usize>)> = vec![
            ([-2.0, -2.0], None),
            ([2.0, -2.0], None),
            ([2.0, 2.0], None),
            ([-2.0, 2.0], None),
        ];
        for (ei, e) in elems.iter().enumerate().skip(1) {
            let n = [c[0] - e.image[0], c[1] - e.image[1], c[2] - e.image[2]];
            // keep points X with n0 X + n1 Y - n2 >= 0
            let f = |p: [f64; 2]| n[0] * p[0] + n[1] * p[1] - n[2];
            poly = clip(&poly, f, ei);
            if poly.is_empty() {
                return Err(Error::Geometry("empty Dirichlet domain".into()));
            }
        }
        if poly.iter().any(|(_, s)| s.is_none()) {
            radius += 3.0;
            continue;
        }
        let far = poly
            .iter()
            .map(|(v, _)| {
                let p = klein_lift(v[0], v[1]);
                (-ldot(c, p)).max(1.0).acosh()
            })
            .fold(0.0, f64::max);
        if 2.0 * far + 0.5 > radius {
            radius = 2.0 * far + 1.0;
            continue;
        }
        // drop numerically degenerate sides
        let mut cleaned: Vec<([f64; 2], usize)> = vec![];
        for (i, (v, s)) in poly.iter().enumerate() {
            let w = poly[(i + 1) % poly.len()].0;
            if ((v[0] - w[0]).powi(2) + (v[1] - w[1]).powi(2)).sqrt() < 1e-9 {
                continue;
            }
            cleaned.push((*v, s.unwrap()));
        }
        let elements: Vec<&Element> = cleaned.iter().map(|(_, e)| &elems[*e]).collect();
        let mut sides = vec![];
        for (i, e) in elements.iter().enumerate() {
            // partner: the side whose element is the inverse of this one
            let inv = invert_word(&e.word);
            let target = {
                let gi = crate::numeric::Mat3::identity(64);
                let _ = gi;
                let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
                for &(g, s) in &inv {
                    let gm = if s > 0 {
                        gens[g].to_f64()
                    } else {
                        gens[g].lorentz_inverse().to_f64()
                    };
                    m = m3_mul(&m, &gm);
                }
                m3_apply(&m, c)
            };
            let partner = elements.iter().position(|o| {
                (o.image[0] - target[0]).abs() + (o.image[1] - target[1]).abs()
                    < 1e-6 * (1.0 + target[2].abs())
            });
            let partner = partner.ok_or_else(|| {
                Error::Geometry(format!("Dirichlet side {i} has no partner"))
            })?;
            sides.push(Side {
                partner: Some(partner),
                word: e.word.clone(),
            });
        }
        return Ok(sides);
    }
    Err(Error::Geometry("Dirichlet enumeration radius exhausted".into()))
}

fn clip(
    poly: &[([f64; 2], Option<usize>)],
    f: impl Fn([f64; 2]) -> f64,
    tag: usize,
) -> Vec<([f64; 2], Option<usize>)> {
    let n = poly.len();
    let mut out = vec![];
    for i in 0..n {
        let (p, sp) = poly[i];
        let (q, _) = poly[(i + 1) % n];
        let (fp, fq) = (f(p), f(q));
        if fp >= 0.0 {
            out.push((p, sp));
            if fq < 0.0 {
                let t = fp / (fp - fq);
                out.push(([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])], Some(tag)));
            }
        } else if fq >= 0.0 {
            let t = fp / (fp - fq);
            out.push(([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])], sp));
        }
    }
    out
}

/// Hyperbolic area of a compact convex polygon given by its Klein vertices.
pub fn polygon_area(vertices: &[Vec3]) -> f64 {
    let n = vertices.len();
    let pts: Vec<[f64; 3]> = vertices
        .iter()
        .map(|v| {
            let (x, y) = (v.x.to_f64() / v.z.to_f64(), v.y.to_f64() / v.z.to_f64());
            klein_lift(x, y)
        })
        .collect();
    let mut angle_sum = 0.0;
    for k in 0..n {
        angle_sum += interior_angle(pts[(k + n - 1) % n], pts[k], pts[(k + 1) % n]);
    }
    (n as f64 - 2.0) * std::f64::consts::PI - angle_sum
}

/// Interior angle at `b` of the geodesic triangle corner `a, b, c`.
pub fn interior_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let tangent = |p: [f64; 3]| {
        let d = ldot(p, b);
        let t = [p[0] + d * b[0], p[1] + d * b[1], p[2] + d * b[2]];
        let n = ldot(t, t).sqrt();
        [t[0] / n, t[1] / n, t[2] / n]
    };
    let (u, v) = (tangent(a), tangent(c));
    ldot(u, v).clamp(-1.0, 1.0).acos()
}

/// Convenience for tests and presets: the real number `v` at `prec` bits.
pub fn r(prec: u32, v: f64) -> Real {
    real(prec, v)
}
