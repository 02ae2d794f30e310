//! Generalised axisymmetric maps and the evaluable map catalog.

mod field;
mod halfplane;
mod injectivity;
mod profile;

pub use field::{bump, Field3, MapField3};
pub use halfplane::{restrict_to_halfplane, HalfPlaneRestriction};
pub use injectivity::{injectivity_sample, Ball, InjectivityReport, MIN_PAIRS};
pub use profile::{
    catalog, catalog_orientation_preserving, AxialProfile, AxisymProfile, RadialProfile, ThetaMap, ValueGrad, CATALOG,
    DEFAULT_R_MIN, THETA_NET,
};
