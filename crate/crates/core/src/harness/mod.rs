//! Sampling experiments: Property (L) sweeps, weak-limit estimates, good-set
//! statistics and the coarea cross-check, with their configuration files and
//! report formats.

mod axisym_check;
mod coarea;
mod config;
mod good_set;
mod property_l;
mod report;
mod weak_limit;

pub use axisym_check::{
    run_axisym_check, AxisymCheck, AxisymCheckReport, CheckOutcome, ProfileFile, DIVERGENCE_TOLERANCE,
    JACOBIAN_TOLERANCE,
};
pub use coarea::{run_coarea_check, CoareaReport, CoareaRow, Fibration, Weight, COAREA_TOLERANCE, MIN_RESOLUTION};
pub use config::{load_toml, parse_list, parse_map_tag, Density, GoodSetConfig, MapSpec, Method, PropertyLConfig};
pub use good_set::{density_catalog, run_good_set, GoodSetReport, GoodSetStatus, J_ETA_BOUND};
pub use property_l::{run_property_l, Aggregate, LinkProbeReport, SampleRecord, MAX_N_CURVE, SURROGATE};
pub use report::{to_json, write_csv, write_jsonl, CSV_COLUMNS};
pub use weak_limit::{
    run_weak_limit, EstimateRow, RadiusSummary, SequenceTag, WeakLimitConfig, WeakLimitReport, JACOBIAN_GRID,
};
