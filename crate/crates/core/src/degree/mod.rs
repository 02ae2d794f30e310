//! Topological degree of planar maps: winding numbers on circles, preimage
//! counts, the planar formula for linking numbers and the divergence
//! identities.

mod divergence;
mod planar_linking;
mod planar_map;
mod preimage;
mod winding;

pub use divergence::{
    divergence_identity_residual, test_catalog, BumpFunction, Cubic, TestField, FIELD_WIDTH, MONOMIALS,
};
pub use planar_linking::{linking_from_planar_map, linking_via_planar_degree, PlanarLinkOutcome, PLANARITY_TOLERANCE};
pub use planar_map::{Disk, PlanarCatalog, PlanarMap};
pub use preimage::{find_preimages, preimage_count_degree, PreimageReport, DEDUP_RELATIVE};
pub use winding::{winding_along, winding_number, DegreeResult, BOUNDARY_TOLERANCE, MIN_SAMPLES};
