//! JSON documents for surfaces and curves.
//!
//! ```json
//! {"format": 1, "name": "torus", "genus": 1, "boundary": 0,
//!  "faces": [[0, 1, 2, 3]], "pairings": [[0, 2], [1, 3]],
//!  "chirality": "right_hand"}
//! ```
//!
//! A curve names its preset surface and lists its exit sides; the
//! itinerary is informational and recomputed on load.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::EmbeddedCurve;
use crate::error::{Error, Result};

use super::{build_preset, CellSurface, Chirality, Geometry};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SurfaceJson {
    pub format: u32,
    pub name: String,
    pub genus: usize,
    pub boundary: usize,
    pub faces: Vec<Vec<usize>>,
    pub pairings: Vec<[usize; 2]>,
    #[serde(default)]
    pub boundary_edges: Vec<usize>,
    pub chirality: Chirality,
}

impl SurfaceJson {
    pub fn from_surface(s: &CellSurface) -> Self {
        SurfaceJson {
            format: FORMAT,
            name: s.name.clone(),
            genus: s.genus,
            boundary: s.boundary_count,
            faces: s.faces.clone(),
            pairings: s.edge_pairings.iter().map(|&(a, b)| [a, b]).collect(),
            boundary_edges: s.boundary_edges.clone(),
            chirality: s.chirality,
        }
    }

    /// Schema and cell-structure validation; the result carries no geometry.
    pub fn to_surface(&self) -> Result<CellSurface> {
        if self.format != FORMAT {
            return Err(Error::Validation(format!("unsupported format {}", self.format)));
        }
        let s = CellSurface::assemble(
            &self.name,
            self.genus,
            self.boundary,
            self.faces.clone(),
            self.pairings.iter().map(|p| (p[0], p[1])).collect(),
            self.boundary_edges.clone(),
            self.chirality,
            vec![],
            vec![],
            Geometry::Abstract,
            0.0,
        );
        s.validate()?;
        Ok(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveJson {
    pub format: u32,
    pub surface: String,
    pub exits: Vec<u16>,
    pub oriented: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub itinerary: Vec<(usize, usize, i8)>,
}

impl CurveJson {
    pub fn from_curve(c: &EmbeddedCurve) -> Result<Self> {
        Ok(CurveJson {
            format: FORMAT,
            surface: c.surface().name.clone(),
            exits: c.exits().to_vec(),
            oriented: c.oriented,
            itinerary: c.itinerary(&[])?,
        })
    }

    pub fn to_curve(&self) -> Result<(Arc<CellSurface>, EmbeddedCurve)> {
        if self.format != FORMAT {
            return Err(Error::Validation(format!("unsupported format {}", self.format)));
        }
        let (s, _) = build_preset(&self.surface)?;
        let c = EmbeddedCurve::from_side_word(&s, &self.exits, self.oriented)?;
        Ok((s, c))
    }
}
