use std::f64::consts::PI;

use rayon::prelude::*;

use super::{polyline_distance, touch_threshold, ClosedPolyline3, LinkResult};
use crate::geometry::Point3;

/// Linking number by the Gauss integral, evaluated exactly per segment pair.
///
/// For segments `[p_i, p_i+1]` of `c1` and `[q_j, q_j+1]` of `c2` the Gauss
/// integrand integrates to the solid angle of the parallelogram
/// `{p - q}` seen from the origin. That parallelogram is split into two
/// triangles whose signed solid angles come from the Van Oosterom–Strackee
/// formula, so the sum over all pairs is an integer up to rounding.
pub fn linking_gauss(c1: &ClosedPolyline3, c2: &ClosedPolyline3) -> LinkResult {
    let raw = gauss_pair_sum(c1, c2);
    let sep = polyline_distance(c1, c2);
    LinkResult::from_raw(raw, sep, touch_threshold(c1, c2))
}

/// The raw (unrounded) Gauss linking sum, normalised so that it equals
/// `-(1/4pi) \oint\oint (x - y) . (dx x dy) / |x - y|^3`, which makes the
/// canonical pair `+1`.
pub fn gauss_pair_sum(c1: &ClosedPolyline3, c2: &ClosedPolyline3) -> f64 {
    let (v1, v2) = (c1.vertices(), c2.vertices());
    let n = v1.len();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| row_sum(v1[i], v1[(i + 1) % n], v2))
        .collect();
    // fixed order so the result does not depend on the thread schedule
    neumaier_sum(rows.iter().copied()) / (4.0 * PI)
}

fn row_sum(p0: Point3, p1: Point3, q: &[Point3]) -> f64 {
    let m = q.len();
    let mut lower: Vec<(Point3, f64)> = q.iter().map(|qj| diff_and_norm(p0, *qj)).collect();
    let mut upper: Vec<(Point3, f64)> = q.iter().map(|qj| diff_and_norm(p1, *qj)).collect();
    lower.push(lower[0]);
    upper.push(upper[0]);
    let mut acc = Neumaier::default();
    for j in 0..m {
        // parallelogram corners in (s, t) order: (0,0), (1,0), (1,1), (0,1)
        let a = lower[j];
        let b = upper[j];
        let c = upper[j + 1];
        let d = lower[j + 1];
        acc.add(triangle_solid_angle(a, b, c) + triangle_solid_angle(a, c, d));
    }
    acc.total()
}

#[inline]
fn diff_and_norm(p: Point3, q: Point3) -> (Point3, f64) {
    let d = p - q;
    (d, d.norm())
}

/// Signed solid angle of the triangle `(a, b, c)` seen from the origin.
#[inline]
fn triangle_solid_angle(a: (Point3, f64), b: (Point3, f64), c: (Point3, f64)) -> f64 {
    let (a, na) = a;
    let (b, nb) = b;
    let (c, nc) = c;
    let num = a.dot(b.cross(c));
    if num == 0.0 {
        return 0.0;
    }
    let den = na * nb * nc + a.dot(b) * nc + a.dot(c) * nb + b.dot(c) * na;
    2.0 * num.atan2(den)
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn neumaier_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    xs.for_each(|x| acc.add(x));
    acc.total()
}
