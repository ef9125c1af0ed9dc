//! Numeric verification layer: Fenchel–Nielsen structures, geodesic
//! lengths, the injectivity radius and the length and intersection
//! inequalities that drive the factorization bounds.

mod estimate;
pub mod fenchel_nielsen;
mod report;
mod structure;
mod verify;

pub use estimate::{estimate_constant, ConstantEstimate, Stage, Tower};
pub use report::{svg_histogram, write_csv};
pub use structure::{
    build_fn_structure, build_from_input, curve_length, geodesic_length, injectivity_radius,
    FNStructure, FnInput, InjectivityRadius, MarkedCurveWord, PantsGraph,
};
pub use verify::{
    run_suite, Suite, verify_reduction_lengths, verify_reduction_schedule, verify_system_bounds,
    verify_thurston, verify_twist_bounds, BoundRow, ReductionReport, ThurstonReport,
    TwistBoundReport, SLACK,
};
