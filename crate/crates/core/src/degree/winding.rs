use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use super::{Disk, PlanarMap};
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Minimum number of base samples on a circle.
pub const MIN_SAMPLES: usize = 64;
/// A boundary sample closer than this (times `max(1, |y|)`) to the target makes
/// the degree undefined.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;
const MAX_DEPTH: u32 = 40;

/// A 2-D degree together with how far the target was from the boundary image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub value: i64,
    /// `min |w(boundary) - y|` over the samples used.
    pub boundary_clearance: f64,
    pub defined: bool,
}

impl DegreeResult {
    /// The degree, or `BoundaryHit` if it is undefined.
    pub fn degree(&self) -> Result<i64> {
        if self.defined {
            Ok(self.value)
        } else {
            Err(Error::BoundaryHit(self.boundary_clearance))
        }
    }
}

/// Winding number of `t -> w(circle(t))` about `y`, from `n` base samples
/// refined until every angular step is below `pi/2`.
pub fn winding_number(w: &(impl PlanarMap + ?Sized), circle: Disk, y: Point2, n: usize) -> Result<DegreeResult> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "winding_number needs n >= {MIN_SAMPLES}, got {n}"
        )));
    }
    Ok(winding_along(|t| w.eval(circle.boundary(TAU * t)), y, n))
}

/// Winding number about `y` of the closed path `t -> path(t)`, `t in [0, 1)`.
pub fn winding_along(path: impl Fn(f64) -> Point2, y: Point2, n: usize) -> DegreeResult {
    let tol = BOUNDARY_TOLERANCE * y.norm().max(1.0);
    let mut state = Walk {
        clearance: f64::INFINITY,
        total: 0.0,
        ok: true,
        tol,
    };
    let first = path(0.0) - y;
    let mut prev = (0.0, first);
    state.visit(first);
    for i in 1..=n {
        let t = i as f64 / n as f64;
        let v = if i == n { first } else { path(t) - y };
        state.visit(v);
        state.segment(&path, y, prev, (t, v), 0);
        prev = (t, v);
    }
    let turns = state.total / TAU;
    let value = turns.round();
    let defined = state.ok && state.clearance > tol && (turns - value).abs() < 1e-6;
    DegreeResult {
        value: value as i64,
        boundary_clearance: state.clearance,
        defined,
    }
}

struct Walk {
    clearance: f64,
    total: f64,
    ok: bool,
    tol: f64,
}

impl Walk {
    fn visit(&mut self, v: Point2) {
        let d = v.norm();
        if !d.is_finite() {
            self.ok = false;
        }
        self.clearance = self.clearance.min(d);
    }

    fn segment(&mut self, path: &impl Fn(f64) -> Point2, y: Point2, a: (f64, Point2), b: (f64, Point2), depth: u32) {
        if !self.ok {
            return;
        }
        let step = a.1.cross(b.1).atan2(a.1.dot(b.1));
        if step.abs() < FRAC_PI_2 || a.1.norm() <= self.tol || b.1.norm() <= self.tol {
            self.total += step;
            return;
        }
        if depth >= MAX_DEPTH {
            self.ok = false;
            return;
        }
        let tm = 0.5 * (a.0 + b.0);
        let vm = path(tm) - y;
        self.visit(vm);
        self.segment(path, y, a, (tm, vm), depth + 1);
        self.segment(path, y, (tm, vm), b, depth + 1);
    }
}
