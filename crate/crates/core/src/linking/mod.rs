//! Linking numbers of oriented closed polylines.
//!
//! Two independent routes are provided: the Gauss double integral summed
//! exactly over segment pairs ([`linking_gauss`]) and the signed count of
//! crossings in a generic planar projection ([`linking_crossings`]).
//!
//! Orientation convention: the horizontal core circle `mu_0` (counter-clockwise
//! seen from `+x3`) and the vertical circle `nu_e1` (running from the outer
//! equator up over the top) have linking number `+1`. Both routes are pinned
//! to this convention.

mod crossings;
mod gauss;
mod near_isometry;
mod polyline;

pub use crossings::{linking_crossings, linking_crossings_auto};
pub use gauss::{gauss_pair_sum, linking_gauss};
pub use near_isometry::{near_isometry_experiment, smallest_singular_value, NearIsometryReport, SINGULAR_NET_SIZE};
pub use polyline::{polyline_distance, sample_curve, segment_distance, try_sample_curve, ClosedPolyline3, MIN_EDGE};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A linking number is accepted only if the raw value is this close to an integer.
pub const ROUNDING_TOLERANCE: f64 = 0.05;
/// Curves closer than this fraction of their extent count as touching.
pub const TOUCH_RELATIVE: f64 = 1e-9;

/// Outcome of a linking-number computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkResult {
    /// Rounded linking number; meaningful only when `defined`.
    pub value: i64,
    /// Value before rounding.
    pub raw: f64,
    pub min_separation: f64,
    pub defined: bool,
}

impl LinkResult {
    /// The integer linking number, or `CurvesTouch` if it is undefined.
    pub fn linking(&self) -> Result<i64> {
        if self.defined {
            Ok(self.value)
        } else {
            Err(Error::CurvesTouch {
                separation: self.min_separation,
                threshold: f64::NAN,
            })
        }
    }

    pub(crate) fn from_raw(raw: f64, min_separation: f64, threshold: f64) -> Self {
        let value = raw.round();
        let defined = min_separation > threshold && raw.is_finite() && (raw - value).abs() < ROUNDING_TOLERANCE;
        LinkResult {
            value: if value.is_finite() { value as i64 } else { 0 },
            raw,
            min_separation,
            defined,
        }
    }
}

/// Separation below which two curves are treated as touching.
pub fn touch_threshold(c1: &ClosedPolyline3, c2: &ClosedPolyline3) -> f64 {
    TOUCH_RELATIVE * c1.extent().max(c2.extent())
}
