use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Consecutive vertices closer than this are rejected.
pub const MIN_EDGE: f64 = 1e-12;

/// An oriented closed curve given by its vertices; the last vertex connects
/// back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedPolyline3 {
    vertices: Vec<Point3>,
}

impl ClosedPolyline3 {
    pub fn new(vertices: Vec<Point3>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCurve(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidCurve(format!("vertex {i} is not finite")));
        }
        let n = vertices.len();
        let mut length = 0.0;
        for i in 0..n {
            let d = vertices[i].distance(vertices[(i + 1) % n]);
            if d < MIN_EDGE {
                return Err(Error::InvalidCurve(format!(
                    "vertices {i} and {} coincide (distance {d:e})",
                    (i + 1) % n
                )));
            }
            length += d;
        }
        if !(length > 0.0) {
            return Err(Error::InvalidCurve("zero total length".into()));
        }
        Ok(ClosedPolyline3 { vertices })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Segments `(start, end)` including the closing one.
    pub fn segments(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn max_edge(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }

    /// Diameter of the vertex set.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Length of the bounding-box diagonal; within a factor sqrt(3) of the diameter.
    pub fn extent(&self) -> f64 {
        let mut lo = self.vertices[0];
        let mut hi = lo;
        for v in &self.vertices {
            lo = Point3::new(lo.x1.min(v.x1), lo.x2.min(v.x2), lo.x3.min(v.x3));
            hi = Point3::new(hi.x1.max(v.x1), hi.x2.max(v.x2), hi.x3.max(v.x3));
        }
        hi.distance(lo)
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, f: impl Fn(Point3) -> Result<Point3>) -> Result<Self> {
        let v = self.vertices.iter().map(|p| f(*p)).collect::<Result<Vec<_>>>()?;
        ClosedPolyline3::new(v)
    }

    /// The same curve traversed `times` times.
    pub fn repeated(&self, times: usize) -> Self {
        let mut v = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.vertices);
        }
        ClosedPolyline3 { vertices: v }
    }

    /// Same vertex set, opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        ClosedPolyline3 { vertices: v }
    }

    /// Parses the plain-text curve format: one vertex per line as three
    /// whitespace-separated floats, `#` starts a comment, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 3 coordinates, found {}", fields.len()),
                });
            }
            let mut xyz = [0.0; 3];
            for (slot, field) in xyz.iter_mut().zip(&fields) {
                *slot = field.parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("{field:?}: {e}"),
                })?;
            }
            vertices.push(Point3::from_array(xyz));
        }
        ClosedPolyline3::new(vertices)
    }

    /// Serialises in the plain-text curve format. Floats use the shortest
    /// representation that round-trips.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "{:?} {:?} {:?}", v.x1, v.x2, v.x3);
        }
        s
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        ClosedPolyline3::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path.as_ref(), self.to_text())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
    }
}

/// Samples a closed curve at `t_i = 2 pi i / n`.
pub fn sample_curve(curve: impl Fn(f64) -> Point3, n: usize) -> Result<ClosedPolyline3> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3 samples, got {n}")));
    }
    ClosedPolyline3::new((0..n).map(|i| curve(TAU * i as f64 / n as f64)).collect())
}

/// Fallible variant of [`sample_curve`] for curves composed with maps.
pub fn try_sample_curve(curve: impl Fn(f64) -> Result<Point3>, n: usize) -> Result<ClosedPolyline3> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3 samples, got {n}")));
    }
    ClosedPolyline3::new(
        (0..n)
            .map(|i| curve(TAU * i as f64 / n as f64))
            .collect::<Result<_>>()?,
    )
}

/// Minimal distance between the segments `[p0, p1]` and `[q0, q1]`.
pub fn segment_distance(p0: Point3, p1: Point3, q0: Point3, q1: Point3) -> f64 {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.dot(d1);
    let e = d2.dot(d2);
    let f = d2.dot(r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return r.norm();
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    ((p0 + d1 * s) - (q0 + d2 * t)).norm()
}

/// Minimal distance between two polylines, exact over segments.
pub fn polyline_distance(c1: &ClosedPolyline3, c2: &ClosedPolyline3) -> f64 {
    let (v1, v2) = (c1.vertices(), c2.vertices());
    let (n, m) = (v1.len(), v2.len());
    let table: Vec<f64> = v1
        .iter()
        .flat_map(|p| v2.iter().map(move |q| (*p - *q).norm_sq()))
        .collect();
    let mut exact = table.iter().copied().fold(f64::INFINITY, f64::min).sqrt();
    // a segment pair can only beat the best vertex distance if its closest
    // endpoints are within half the two longest edges of it
    let slack = 0.5 * (c1.max_edge() + c2.max_edge());
    for i in 0..n {
        let i1 = (i + 1) % n;
        for j in 0..m {
            let j1 = (j + 1) % m;
            let near_sq = table[i * m + j]
                .min(table[i * m + j1])
                .min(table[i1 * m + j])
                .min(table[i1 * m + j1]);
            let reach = exact + slack;
            if near_sq <= reach * reach {
                exact = exact.min(segment_distance(v1[i], v1[i1], v2[j], v2[j1]));
            }
        }
    }
    exact
}
