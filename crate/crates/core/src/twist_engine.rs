//! Dehn twists acting on curves by surgery.
//!
//! `D_a^n(b)` is obtained by walking along `b` and, at every crossing with
//! `a`, going once around `a` `|n|` times before continuing along `b`. The
//! resulting closed path is then tightened to its geodesic. Whether the
//! detour follows `a` forwards or backwards depends on the sign of the
//! crossing, the sign of `n` and the surface chirality, so the result does
//! not depend on the orientation chosen for `a`.

use serde::{Deserialize, Serialize};

use crate::arrangement::arrange;
use crate::curve::EmbeddedCurve;
use crate::curve_calculus::fills;
use crate::error::{Error, Result};
use crate::surface_model::{build_preset, torus_curve};

/// A product of Dehn twists, applied left to right: the first letter acts
/// first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistWord {
    pub letters: Vec<(EmbeddedCurve, i32)>,
}

impl TwistWord {
    pub fn new() -> Self {
        TwistWord::default()
    }

    pub fn letter(c: &EmbeddedCurve, exp: i32) -> Result<Self> {
        TwistWord::new().then(c, exp)
    }

    /// Append `D_c^exp`, acting after the current word.
    pub fn then(mut self, c: &EmbeddedCurve, exp: i32) -> Result<Self> {
        c.require_essential()?;
        if exp == 0 {
            return Err(Error::Precondition("twist exponents are nonzero".into()));
        }
        if let Some((first, _)) = self.letters.first() {
            if first.surface().id() != c.surface().id() {
                return Err(Error::SurfaceMismatch);
            }
        }
        self.letters.push((c.unoriented(), exp));
        Ok(self)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &TwistWord) -> Result<TwistWord> {
        let mut w = self.clone();
        for (c, e) in &other.letters {
            w = w.then(c, *e)?;
        }
        Ok(w)
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self.letters.iter().rev().map(|(c, e)| (c.clone(), -e)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.1 > 0)
    }

    /// Total number of single twists, `Σ |exponent|`.
    pub fn twist_count(&self) -> u64 {
        self.letters.iter().map(|l| l.1.unsigned_abs() as u64).sum()
    }
}

/// `D_a^n(b)`. The orientation of `b`, if any, is carried along.
pub fn apply_twist(a: &EmbeddedCurve, n: i32, b: &EmbeddedCurve) -> Result<EmbeddedCurve> {
    a.require_essential()?;
    b.require_essential()?;
    if a.surface().id() != b.surface().id() {
        return Err(Error::SurfaceMismatch);
    }
    if n == 0 || a.isotopic(b) {
        return Ok(b.clone());
    }
    let s = b.surface();
    let arr = arrange(&[a, b])?;
    let xs = arr.along(1, 0, s.chirality.sign());
    if xs.is_empty() {
        return Ok(b.clone());
    }
    let partner = s.partner_table();
    let reps = n.unsigned_abs() as usize;
    let bex = b.exits();
    let mut word = Vec::with_capacity(bex.len() + xs.len() * reps * a.itinerary_len());
    let mut next = 0;
    for (j, &side) in bex.iter().enumerate() {
        while next < xs.len() && xs[next].chord_a == j {
            let x = &xs[next];
            // sign of the crossing seen from `a`: `b` crosses `a` from right
            // to left iff `a` crosses `b` from left to right
            let forward = n.signum() * -x.sign > 0;
            let detour = a.loop_from(x.chord_b, forward, &partner);
            for _ in 0..reps {
                word.extend_from_slice(&detour);
            }
            next += 1;
        }
        word.push(side);
    }
    EmbeddedCurve::from_side_word(s, &word, b.oriented)
}

/// Apply the letters of `w` to `c`, first letter first.
pub fn apply_word(w: &TwistWord, c: &EmbeddedCurve) -> Result<EmbeddedCurve> {
    let mut cur = c.clone();
    for (a, e) in &w.letters {
        if a.surface().id() != c.surface().id() {
            return Err(Error::SurfaceMismatch);
        }
        cur = apply_twist(a, *e, &cur)?;
    }
    Ok(cur)
}

pub fn act_on_system(w: &TwistWord, sys: &[EmbeddedCurve]) -> Result<Vec<EmbeddedCurve>> {
    sys.iter().map(|c| apply_word(w, c)).collect()
}

/// Whether `w` fixes every curve of a filling system, orientations
/// included. A mapping class with this property is the identity.
pub fn is_identity_on_system(w: &TwistWord, filling: &[EmbeddedCurve]) -> Result<bool> {
    if !fills(filling)? {
        return Err(Error::Precondition("curve system does not fill".into()));
    }
    for c in filling {
        let c = c.oriented();
        let img = apply_word(w, &c)?;
        if !img.same_oriented(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `v` and `w` agree on every curve of a filling system,
/// orientations included, hence define the same mapping class. Cheaper than
/// testing `v w⁻¹` when both words are long.
pub fn agree_on_system(v: &TwistWord, w: &TwistWord, filling: &[EmbeddedCurve]) -> Result<bool> {
    if !fills(filling)? {
        return Err(Error::Precondition("curve system does not fill".into()));
    }
    for c in filling {
        let c = c.oriented();
        if !apply_word(v, &c)?.same_oriented(&apply_word(w, &c)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Serialized twist word.
///
/// ```json
/// {"format": 1, "surface": "genus2_closed",
///  "letters": [{"pants": 0, "exp": -1}, {"dual": 2, "exp": 1},
///              {"curve": [3, 7, 1], "exp": 2}]}
/// ```
///
/// A letter names its curve by exit sides, by the index of a pants or dual
/// curve of the preset, or on the torus by a slope `[p, q]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordJson {
    pub format: u32,
    pub surface: String,
    pub letters: Vec<LetterJson>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LetterJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<u16>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pants: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<(i64, i64)>,
    pub exp: i32,
}

impl WordJson {
    pub fn from_word(surface: &str, w: &TwistWord) -> WordJson {
        WordJson {
            format: crate::surface_model::FORMAT,
            surface: surface.to_string(),
            letters: w
                .letters
                .iter()
                .map(|(c, e)| LetterJson {
                    curve: Some(c.exits().to_vec()),
                    exp: *e,
                    ..Default::default()
                })
                .collect(),
        }
    }

    pub fn to_word(&self) -> Result<TwistWord> {
        if self.format != crate::surface_model::FORMAT {
            return Err(Error::Validation(format!("unsupported format {}", self.format)));
        }
        let (s, sys) = build_preset(&self.surface)?;
        let mut w = TwistWord::new();
        for l in &self.letters {
            let c = match (&l.curve, l.pants, l.dual, l.slope) {
                (Some(ex), None, None, None) => EmbeddedCurve::from_exits(&s, ex, false)?,
                (None, Some(i), None, None) => sys
                    .interior_curves()
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Validation(format!("no pants curve {i}")))?,
                (None, None, Some(i), None) => sys
                    .dual_curves
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Validation(format!("no dual curve {i}")))?,
                (None, None, None, Some((p, q))) => torus_curve(&s, p, q)?,
                _ => {
                    return Err(Error::Validation(
                        "a letter needs exactly one of curve, pants, dual, slope".into(),
                    ))
                }
            };
            w = w.then(&c, l.exp)?;
        }
        Ok(w)
    }
}
