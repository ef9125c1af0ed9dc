use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};
use crate::hyperbolic::{half_turn, rotation};
use crate::hyperbolic_metrics::fenchel_nielsen::{theta_generators, FnParams, GENERATOR_NAMES};
use crate::numeric::{real, Mat3};
use crate::polygon::{dirichlet_sides, Construction, GenLetter, GeneratorFn, Polygon, Side};

use super::{CellSurface, Chirality, Geometry, PantsSystem};

/// The hyperbolic structure underlying the closed genus-two preset.
pub const ENGINE_FN: FnParams = FnParams {
    lengths: [2.0, 2.2, 2.4],
    twists: [0.3, 0.6, 0.9],
};

/// Centre of the Dirichlet domain, chosen off every symmetry of the surface.
pub(crate) const DIRICHLET_CENTER: (f64, f64) = (0.0731, -0.0419);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetId {
    Torus,
    OneHoledTorus,
    FourHoledSphere,
    Genus2Closed,
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" => Ok(PresetId::Torus),
            "one_holed_torus" => Ok(PresetId::OneHoledTorus),
            "four_holed_sphere" => Ok(PresetId::FourHoledSphere),
            "genus2_closed" | "genus2" => Ok(PresetId::Genus2Closed),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

impl PresetId {
    pub fn name(self) -> &'static str {
        match self {
            PresetId::Torus => "torus",
            PresetId::OneHoledTorus => "one_holed_torus",
            PresetId::FourHoledSphere => "four_holed_sphere",
            PresetId::Genus2Closed => "genus2_closed",
        }
    }
}

type Preset = (Arc<CellSurface>, PantsSystem);

/// A validated preset surface with its pants system. Presets are built
/// once per process and shared, so curves from repeated calls agree.
pub fn build_preset(name: &str) -> Result<Preset> {
    let id = PresetId::from_str(name)?;
    static CELLS: [OnceLock<std::result::Result<Preset, Error>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = &CELLS[id as usize];
    slot.get_or_init(|| match id {
        PresetId::Torus => torus(),
        PresetId::OneHoledTorus => one_holed_torus(),
        PresetId::FourHoledSphere => four_holed_sphere(),
        PresetId::Genus2Closed => genus2_closed(),
    })
    .clone()
}

fn polygon_surface(
    name: &str,
    polygon: Polygon,
    generator_names: Vec<String>,
    step: f64,
) -> Result<CellSurface> {
    let n = polygon.side_count();
    let mut pairings = vec![];
    let mut boundary = vec![];
    for (k, s) in polygon.sides.iter().enumerate() {
        match s.partner {
            Some(j) if k < j => pairings.push((k, j)),
            Some(_) => {}
            None => boundary.push(k),
        }
    }
    let chi = polygon.euler_characteristic();
    let nb = polygon.boundary_components();
    let genus2 = 2 - chi - nb as i64;
    if genus2 < 0 || genus2 % 2 != 0 {
        return Err(Error::Validation(format!("{name}: inconsistent topology")));
    }
    let side_words = polygon.sides.iter().map(|s| s.word.clone()).collect();
    let surface = CellSurface::assemble(
        name,
        (genus2 / 2) as usize,
        nb,
        vec![(0..n).collect()],
        pairings,
        boundary,
        Chirality::RightHand,
        generator_names,
        side_words,
        Geometry::Hyperbolic(polygon),
        step,
    );
    surface.validate()?;
    Ok(surface)
}

fn finish(mut s: CellSurface) -> Result<Arc<CellSurface>> {
    // boundary curves are traced on a provisional copy first
    let words = s.boundary_side_words();
    if words.is_empty() {
        return Ok(Arc::new(s));
    }
    let tmp = Arc::new(s);
    let mut keys = vec![];
    for w in &words {
        let c = EmbeddedCurve::peripheral_from_side_word(&tmp, w)?;
        keys.push(c.key().to_vec());
    }
    s = Arc::try_unwrap(tmp).map_err(|_| Error::Geometry("surface still shared".into()))?;
    s.boundary_keys = keys;
    Ok(Arc::new(s))
}

fn torus() -> Result<Preset> {
    let words: Vec<Vec<GenLetter>> = vec![vec![(1, -1)], vec![(0, 1)], vec![(1, 1)], vec![(0, -1)]];
    let s = CellSurface::assemble(
        "torus",
        1,
        0,
        vec![vec![0, 1, 2, 3]],
        vec![(0, 2), (1, 3)],
        vec![],
        Chirality::RightHand,
        vec!["X".into(), "Y".into()],
        words,
        Geometry::Flat,
        1.0,
    );
    s.validate()?;
    let s = Arc::new(s);
    let sys = PantsSystem {
        pants_curves: vec![],
        dual_curves: vec![],
        incidence: vec![],
        interior: 0,
        marking: None,
    };
    Ok((s, sys))
}

/// Schottky domain: disjoint chords at `angles`, paired by `pairs`.
fn schottky(
    name: &str,
    angles: Vec<f64>,
    offset: f64,
    pairs: &[(usize, usize)],
) -> Result<Arc<CellSurface>> {
    let chords = angles.len();
    let mut sides = vec![];
    for c in 0..chords {
        let (g, sign, partner) = pairs
            .iter()
            .enumerate()
            .find_map(|(g, &(a, b))| {
                if a == c {
                    Some((g, 1i8, b))
                } else if b == c {
                    Some((g, -1i8, a))
                } else {
                    None
                }
            })
            .ok_or_else(|| Error::Validation("unpaired chord".into()))?;
        sides.push(Side {
            partner: Some(2 * partner),
            word: vec![(g, sign)],
        });
        sides.push(Side {
            partner: None,
            word: vec![],
        });
    }
    let (ang, pairs_owned) = (angles.clone(), pairs.to_vec());
    let gens: Arc<GeneratorFn> = Arc::new(move |prec| {
        let dist = real(prec, offset).atanh();
        pairs_owned
            .iter()
            .map(|&(a, b)| pairing(&ang, a, b, &dist, prec))
            .collect()
    });
    let step = 2.0 * offset.atanh();
    let names = (0..pairs.len()).map(|g| format!("g{}", g + 1)).collect();
    let poly = Polygon::new(sides, Construction::Chords { angles, offset }, names, gens);
    let names = poly.generator_names.clone();
    finish(polygon_surface(name, poly, names, step)?)
}

/// The element carrying chord `j` onto chord `k`, mapping the polygon across
/// chord `k`.
fn pairing(angles: &[f64], k: usize, j: usize, dist: &rug::Float, prec: u32) -> Mat3 {
    let tk = real(prec, angles[k]);
    let tj = real(prec, angles[j]);
    half_turn(&tk, dist).mul(&rotation(&(tk.clone() - &tj)))
}

fn one_holed_torus() -> Result<Preset> {
    use std::f64::consts::FRAC_PI_2;
    let angles = (0..4).map(|k| k as f64 * FRAC_PI_2).collect();
    let s = schottky("one_holed_torus", angles, 1.25f64.tanh(), &[(0, 2), (1, 3)])?;
    // g1 crosses the chord pair 0/2, g2 the pair 1/3
    let a1 = EmbeddedCurve::from_gen_word(&s, &[(0, 1)], true)?;
    let b1 = EmbeddedCurve::from_gen_word(&s, &[(1, 1)], true)?;
    let boundary = EmbeddedCurve::peripheral_from_side_word(&s, &s.boundary_side_words()[0])?;
    let sys = PantsSystem {
        pants_curves: vec![a1, boundary],
        dual_curves: vec![b1],
        incidence: vec![vec![0, 0], vec![0]],
        interior: 1,
        marking: Some(vec![vec![(0, 1)]]),
    };
    Ok((s, sys))
}

fn four_holed_sphere() -> Result<Preset> {
    use std::f64::consts::FRAC_PI_3;
    let angles = (0..6).map(|k| k as f64 * FRAC_PI_3).collect();
    let s = schottky("four_holed_sphere", angles, 0.93, &[(0, 1), (2, 3), (4, 5)])?;
    // g1 g2 separates the holes around chords 0..3 from the others
    let a1 = EmbeddedCurve::from_gen_word(&s, &[(0, 1), (1, 1)], true)?;
    let b1 = EmbeddedCurve::from_gen_word(&s, &[(1, 1), (2, 1)], true)?;
    let mut pants = vec![a1];
    for w in s.boundary_side_words() {
        pants.push(EmbeddedCurve::peripheral_from_side_word(&s, &w)?);
    }
    let sys = PantsSystem {
        pants_curves: pants,
        dual_curves: vec![b1],
        incidence: vec![vec![0, 1], vec![0], vec![0], vec![1], vec![1]],
        interior: 1,
        marking: Some(vec![vec![(0, 1), (1, 1)]]),
    };
    Ok((s, sys))
}

/// Generator matrices of the engine structure, as Lorentz matrices.
pub(crate) fn engine_generators(prec: u32) -> Vec<Mat3> {
    theta_generators(&ENGINE_FN, prec)
        .expect("engine structure is valid")
        .iter()
        .map(|m| m.to_lorentz())
        .collect()
}

/// Generator words of the shipped genus-two curves.
pub mod genus2_words {
    use crate::polygon::GenLetter;

    pub const A1: &[GenLetter] = &[(0, 1)];
    pub const A2: &[GenLetter] = &[(1, 1)];
    pub const A3: &[GenLetter] = &[(0, 1), (1, 1)];
    /// `x y s⁻¹ y s`, crossing `a1` twice with opposite signs.
    pub const B1: &[GenLetter] = &[(0, 1), (1, 1), (2, -1), (1, 1), (2, 1)];
    /// `x s x s⁻¹ y`.
    pub const B2: &[GenLetter] = &[(0, 1), (2, 1), (0, 1), (2, -1), (1, 1)];
    /// `x t⁻¹ y⁻¹ t`.
    pub const B3: &[GenLetter] = &[(0, 1), (3, -1), (1, -1), (3, 1)];
    /// The commutator `[x, t]`, cutting off the handle of `x`.
    pub const WAIST: &[GenLetter] = &[(0, 1), (3, 1), (0, -1), (3, -1)];
}

fn genus2_closed() -> Result<Preset> {
    let gens: Arc<GeneratorFn> = Arc::new(engine_generators);
    let g = gens(128);
    let sides = dirichlet_sides(&g, DIRICHLET_CENTER)?;
    let step = {
        let poly = Polygon::new(
            sides.clone(),
            Construction::Dirichlet { center: DIRICHLET_CENTER },
            vec![],
            gens.clone(),
        );
        let data = poly.data(128);
        let c = crate::numeric::Vec3::from_klein(
            &real(128, DIRICHLET_CENTER.0),
            &real(128, DIRICHLET_CENTER.1),
        );
        data.pairing
            .iter()
            .map(|m| crate::numeric::distance(&c, &m.apply(&c)).to_f64())
            .fold(0.0, f64::max)
    };
    let names: Vec<String> = GENERATOR_NAMES.iter().map(|s| s.to_string()).collect();
    let poly = Polygon::new(
        sides,
        Construction::Dirichlet { center: DIRICHLET_CENTER },
        names.clone(),
        gens,
    );
    let s = finish(polygon_surface("genus2_closed", poly, names, step)?)?;
    use genus2_words::*;
    let mk = |w: &[GenLetter]| EmbeddedCurve::from_gen_word(&s, w, true);
    let pants_curves = vec![mk(A1)?, mk(A2)?, mk(A3)?];
    let dual_curves = vec![mk(B1)?, mk(B2)?, mk(B3)?];
    let sys = PantsSystem {
        pants_curves,
        dual_curves,
        incidence: vec![vec![0, 1], vec![0, 1], vec![0, 1]],
        interior: 3,
        marking: Some(vec![A1.to_vec(), A2.to_vec(), A3.to_vec()]),
    };
    Ok((s, sys))
}

/// The separating curve `[x, t]` on `genus2_closed`.
pub fn genus2_waist() -> Result<EmbeddedCurve> {
    let (s, _) = build_preset("genus2_closed")?;
    EmbeddedCurve::from_gen_word(&s, genus2_words::WAIST, true)
}
