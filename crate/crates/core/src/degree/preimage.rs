use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{winding_along, DegreeResult, Disk, PlanarMap, BOUNDARY_TOLERANCE};
use crate::error::{Error, Result};
use crate::geometry::{mat2_det, Point2};

const NEWTON_STEPS: usize = 60;
/// Roots closer than this times the disk radius are merged.
pub const DEDUP_RELATIVE: f64 = 1e-8;

/// Roots of `w(x) = y` in a disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreimageReport {
    /// `value` is the number of distinct roots found.
    pub degree: DegreeResult,
    pub roots: Vec<Point2>,
    /// Candidate cells where Newton did not converge but the cell boundary
    /// winds around `y`; each contributes its winding number to the count.
    pub polish_failures: usize,
}

/// Number of distinct solutions of `w(x) = y` inside the disk.
pub fn preimage_count_degree(
    w: &(impl PlanarMap + ?Sized),
    disk: Disk,
    y: Point2,
    grid_n: usize,
) -> Result<DegreeResult> {
    Ok(find_preimages(w, disk, y, grid_n)?.degree)
}

/// Grid scan over `grid_n x grid_n` cells, Newton polish from every cell whose
/// centre residual is within reach of its local linearisation, then
/// deduplication.
pub fn find_preimages(w: &(impl PlanarMap + ?Sized), disk: Disk, y: Point2, grid_n: usize) -> Result<PreimageReport> {
    if grid_n < 4 {
        return Err(Error::InvalidParameter(format!(
            "grid_n must be at least 4, got {grid_n}"
        )));
    }
    let h = 2.0 * disk.radius / grid_n as f64;
    let corner = disk.center - Point2::new(disk.radius, disk.radius);
    let tol = BOUNDARY_TOLERANCE * y.norm().max(1.0);

    let clearance = (0..4 * grid_n.max(64))
        .map(|i| (w.eval(disk.boundary(TAU * i as f64 / (4 * grid_n.max(64)) as f64)) - y).norm())
        .fold(f64::INFINITY, f64::min);

    let found: Vec<CellOutcome> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % grid_n, idx / grid_n);
            let c = corner + Point2::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            scan_cell(w, disk, y, c, h)
        })
        .collect();

    let mut roots: Vec<Point2> = Vec::new();
    let mut extra = 0i64;
    let mut polish_failures = 0;
    for outcome in found {
        match outcome {
            CellOutcome::Root(p) => {
                if roots.iter().all(|q| q.distance(p) > DEDUP_RELATIVE * disk.radius) {
                    roots.push(p);
                }
            }
            CellOutcome::Unpolished(k) => {
                polish_failures += 1;
                extra += k.abs();
            }
            CellOutcome::Empty => {}
        }
    }
    roots.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let value = roots.len() as i64 + extra;
    Ok(PreimageReport {
        degree: DegreeResult {
            value,
            boundary_clearance: clearance,
            defined: clearance > tol,
        },
        roots,
        polish_failures,
    })
}

enum CellOutcome {
    Empty,
    Root(Point2),
    Unpolished(i64),
}

fn scan_cell(w: &(impl PlanarMap + ?Sized), disk: Disk, y: Point2, c: Point2, h: f64) -> CellOutcome {
    // cells entirely outside the disk
    if c.distance(disk.center) > disk.radius + h {
        return CellOutcome::Empty;
    }
    let r = w.eval(c) - y;
    let d = w.differential(c);
    let lip = (d[0][0].powi(2) + d[0][1].powi(2) + d[1][0].powi(2) + d[1][1].powi(2)).sqrt();
    if !(r.norm() <= 2.0 * lip * h + 1e-12) {
        return CellOutcome::Empty;
    }
    match newton(w, y, c, h) {
        Some(p) if disk.contains(p) && (p - c).norm() <= h => CellOutcome::Root(p),
        Some(_) => CellOutcome::Empty,
        None => {
            // fall back to the winding number of the cell boundary
            let half = 0.5 * h;
            let square = |t: f64| {
                let s = 4.0 * t;
                let (k, f) = (s.floor(), s - s.floor());
                let off = match k as i32 {
                    0 => Point2::new(-half + f * h, -half),
                    1 => Point2::new(half, -half + f * h),
                    2 => Point2::new(half - f * h, half),
                    _ => Point2::new(-half, half - f * h),
                };
                w.eval(c + off)
            };
            let deg = winding_along(square, y, 64);
            if deg.defined && deg.value != 0 && disk.contains(c) {
                CellOutcome::Unpolished(deg.value)
            } else {
                CellOutcome::Empty
            }
        }
    }
}

fn newton(w: &(impl PlanarMap + ?Sized), y: Point2, start: Point2, h: f64) -> Option<Point2> {
    let scale = y.norm().max(1.0);
    let mut p = start;
    for _ in 0..NEWTON_STEPS {
        let r = w.eval(p) - y;
        if r.norm() <= 1e-13 * scale {
            return Some(p);
        }
        let d = w.differential(p);
        let det = mat2_det(&d);
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let step = Point2::new(
            (d[1][1] * r.x - d[0][1] * r.y) / det,
            (-d[1][0] * r.x + d[0][0] * r.y) / det,
        );
        p = p - step;
        if !p.is_finite() || p.distance(start) > 4.0 * h {
            return None;
        }
    }
    let r = w.eval(p) - y;
    (r.norm() <= 1e-10 * scale).then_some(p)
}
