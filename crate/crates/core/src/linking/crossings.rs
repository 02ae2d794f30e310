use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{polyline_distance, touch_threshold, ClosedPolyline3, LinkResult};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3};

/// Crossings closer than this (in segment parameter) to a vertex make the
/// projection non-generic.
const PARAM_EPS: f64 = 1e-9;

/// Linking number as the signed number of crossings where `c1` passes
/// under `c2`, viewed from `+infinity * direction`.
///
/// Returns `DegenerateProjection` when a crossing sits on a projected vertex,
/// when projected segments overlap, or when the two curves meet over a
/// crossing; retry with another direction (see [`linking_crossings_auto`]).
pub fn linking_crossings(c1: &ClosedPolyline3, c2: &ClosedPolyline3, direction: Point3) -> Result<LinkResult> {
    let d = direction
        .normalized()
        .ok_or_else(|| Error::InvalidParameter("projection direction must be non-zero".into()))?;
    let (u, v) = orthonormal_frame(d);
    let project = |p: Point3| (Point2::new(p.dot(u), p.dot(v)), p.dot(d));
    let p1: Vec<(Point2, f64)> = c1.vertices().iter().map(|p| project(*p)).collect();
    let p2: Vec<(Point2, f64)> = c2.vertices().iter().map(|p| project(*p)).collect();
    let scale = c1.extent().max(c2.extent());

    let (n, m) = (p1.len(), p2.len());
    let mut total: i64 = 0;
    for i in 0..n {
        let (a0, ha0) = p1[i];
        let (a1, ha1) = p1[(i + 1) % n];
        let e = a1 - a0;
        let (lo_a, hi_a) = bbox(a0, a1);
        for j in 0..m {
            let (b0, hb0) = p2[j];
            let (b1, hb1) = p2[(j + 1) % m];
            let (lo_b, hi_b) = bbox(b0, b1);
            if hi_a.x < lo_b.x || hi_b.x < lo_a.x || hi_a.y < lo_b.y || hi_b.y < lo_a.y {
                continue;
            }
            let f = b1 - b0;
            let denom = e.cross(f);
            let w = b0 - a0;
            if denom.abs() <= 1e-14 * e.norm() * f.norm() {
                // parallel; overlapping collinear pieces are degenerate
                if w.cross(e).abs() <= 1e-12 * scale * e.norm() {
                    return Err(Error::DegenerateProjection);
                }
                continue;
            }
            let s = w.cross(f) / denom;
            let t = w.cross(e) / denom;
            let outside = s < -PARAM_EPS || s > 1.0 + PARAM_EPS || t < -PARAM_EPS || t > 1.0 + PARAM_EPS;
            if outside {
                continue;
            }
            if s < PARAM_EPS || s > 1.0 - PARAM_EPS || t < PARAM_EPS || t > 1.0 - PARAM_EPS {
                return Err(Error::DegenerateProjection);
            }
            let h1 = ha0 + s * (ha1 - ha0);
            let h2 = hb0 + t * (hb1 - hb0);
            if (h1 - h2).abs() <= 1e-12 * scale {
                return Err(Error::DegenerateProjection);
            }
            if h1 < h2 {
                // c1 under c2: sign of the crossing from the projected directions
                total += if e.cross(f) > 0.0 { 1 } else { -1 };
            }
        }
    }
    let sep = polyline_distance(c1, c2);
    Ok(LinkResult::from_raw(total as f64, sep, touch_threshold(c1, c2)))
}

/// [`linking_crossings`] with random projection directions, retried until
/// one is generic (at most 32 attempts).
pub fn linking_crossings_auto(c1: &ClosedPolyline3, c2: &ClosedPolyline3, seed: u64) -> Result<LinkResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let dir = random_unit(&mut rng);
        match linking_crossings(c1, c2, dir) {
            Err(Error::DegenerateProjection) => continue,
            other => return other,
        }
    }
    Err(Error::DegenerateProjection)
}

fn random_unit<R: Rng>(rng: &mut R) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = p.norm();
        if n > 0.1 && n <= 1.0 {
            return p * (1.0 / n);
        }
    }
}

fn bbox(a: Point2, b: Point2) -> (Point2, Point2) {
    (
        Point2::new(a.x.min(b.x), a.y.min(b.y)),
        Point2::new(a.x.max(b.x), a.y.max(b.y)),
    )
}

/// Right-handed frame `(u, v, d)`.
fn orthonormal_frame(d: Point3) -> (Point3, Point3) {
    let helper = if d.x1.abs() < 0.9 {
        Point3::new(1.0, 0.0, 0.0)
    } else {
        Point3::new(0.0, 1.0, 0.0)
    };
    let u = (helper - d * helper.dot(d))
        .normalized()
        .expect("helper not parallel to d");
    let v = d.cross(u);
    (u, v)
}
