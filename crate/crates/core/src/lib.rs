//! Simple closed curves, Dehn twists and positive factorizations on
//! compact oriented surfaces, with a hyperbolic verification layer.

pub mod arrangement;
pub mod curve;
pub mod curve_calculus;
pub mod error;
pub mod hyperbolic;
pub mod hyperbolic_metrics;
pub mod lickorish_reduction;
pub mod numeric;
pub mod polygon;
pub mod positive_factorization;
pub mod surface_model;
pub mod trace;
pub mod twist_engine;

pub use curve::EmbeddedCurve;
pub use error::{Error, Result};
pub use surface_model::{build_preset, CellSurface, Chirality, PantsSystem};
