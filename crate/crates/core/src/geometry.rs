//! Cartesian and cylindrical coordinate algebra in R^3, plus the small
//! fixed-size linear algebra shared by every other module.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points with `x1^2 + x2^2` below this are treated as lying on the x3-axis.
pub const AXIS_TOLERANCE_SQ: f64 = 1e-18;

/// A point (or vector) of R^3 in standard coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Point3 {
    pub const ZERO: Point3 = Point3 {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Point3 { x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x1 * o.x2 - self.x2 * o.x1,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, o: Point3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// Projection onto the first two coordinates.
    pub fn xy(self) -> Point2 {
        Point2::new(self.x1, self.x2)
    }

    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Point3) {
        *self = *self + o;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

/// A point (or vector) of R^2.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn polar(radius: f64, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(radius * c, radius * s)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Cylindrical coordinates `(r, theta, z)` with `r >= 0` and `theta` in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylPoint3 {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
}

impl CylPoint3 {
    /// Builds a cylindrical point, wrapping the angle into `[0, 2pi)`.
    pub fn new(r: f64, theta: f64, z: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite() && theta.is_finite() && z.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cylindrical point needs finite r >= 0, got ({r}, {theta}, {z})"
            )));
        }
        Ok(CylPoint3 {
            r,
            theta: wrap_angle(theta),
            z,
        })
    }

    pub fn to_cartesian(self) -> Point3 {
        let (s, c) = self.theta.sin_cos();
        Point3::new(self.r * c, self.r * s, self.z)
    }
}

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can return exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle_signed(theta: f64) -> f64 {
    let w = wrap_angle(theta);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// Cylindrical coordinates of an off-axis point.
pub fn to_cylindrical(p: Point3) -> Result<CylPoint3> {
    let rho_sq = p.x1 * p.x1 + p.x2 * p.x2;
    if rho_sq < AXIS_TOLERANCE_SQ || !p.is_finite() {
        return Err(Error::AxisPoint(p.x1, p.x2, p.x3));
    }
    Ok(CylPoint3 {
        r: rho_sq.sqrt(),
        theta: wrap_angle(p.x2.atan2(p.x1)),
        z: p.x3,
    })
}

/// Radial unit vector `e_r(theta)`.
pub fn radial_unit(theta: f64) -> Point3 {
    let (s, c) = theta.sin_cos();
    Point3::new(c, s, 0.0)
}

/// Angular unit vector `e_theta(theta)`.
pub fn angular_unit(theta: f64) -> Point3 {
    let (s, c) = theta.sin_cos();
    Point3::new(-s, c, 0.0)
}

pub const E3: Point3 = Point3::new(0.0, 0.0, 1.0);

/// A 3x3 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3 {
    pub m: [[f64; 3]; 3],
}

impl Default for Mat3 {
    fn default() -> Self {
        Mat3::IDENTITY
    }
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };
    pub const ZERO: Mat3 = Mat3 { m: [[0.0; 3]; 3] };

    pub const fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_cols(c0: Point3, c1: Point3, c2: Point3) -> Self {
        Mat3::from_rows([[c0.x1, c1.x1, c2.x1], [c0.x2, c1.x2, c2.x2], [c0.x3, c1.x3, c2.x3]])
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        Mat3::from_rows([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn row(&self, i: usize) -> Point3 {
        Point3::from_array(self.m[i])
    }

    pub fn col(&self, j: usize) -> Point3 {
        Point3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in self.m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Mat3 { m: t }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Cofactor matrix: `self * cof^T = det * I`.
    pub fn cof(&self) -> Mat3 {
        let m = &self.m;
        let mut c = [[0.0; 3]; 3];
        for (i, row) in c.iter_mut().enumerate() {
            let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
            for (j, v) in row.iter_mut().enumerate() {
                let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
                // cyclic index order absorbs the (-1)^(i+j) sign
                *v = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
            }
        }
        Mat3 { m: c }
    }

    pub fn inverse(&self) -> Result<Mat3> {
        let det = self.det();
        if det.abs() <= 1e-14 || !det.is_finite() {
            return Err(Error::Singular(det));
        }
        Ok(self.cof().transpose().scale(1.0 / det))
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        let mut r = self.m;
        r.iter_mut().flatten().for_each(|v| *v *= s);
        Mat3 { m: r }
    }

    pub fn add(&self, o: &Mat3) -> Mat3 {
        let mut r = self.m;
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v += o.m[i][j];
            }
        }
        Mat3 { m: r }
    }

    pub fn sub(&self, o: &Mat3) -> Mat3 {
        self.add(&o.scale(-1.0))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Mat3 { m: r }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        Point3::new(self.row(0).dot(p), self.row(1).dot(p), self.row(2).dot(p))
    }

    /// Frobenius (Euclidean) norm; the matrix norm used throughout the crate.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(o.m.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order with the matching unit
    /// eigenvectors.
    pub fn symmetric_eigen(&self) -> ([f64; 3], [Point3; 3]) {
        let mut a = self.m;
        let mut v = Mat3::IDENTITY.m;
        for _sweep in 0..64 {
            let off = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
            let scale = a.iter().flatten().map(|x| x * x).sum::<f64>();
            if off <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
                break;
            }
            for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
                if a[p][q].abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..3 {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..3 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
        let vm = Mat3 { m: v };
        let mut pairs: Vec<(f64, Point3)> = (0..3).map(|i| (a[i][i], vm.col(i))).collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        (
            [pairs[0].0, pairs[1].0, pairs[2].0],
            [pairs[0].1, pairs[1].1, pairs[2].1],
        )
    }
}

/// Rotation taking the half-plane `O_angle` into the plane `{x3 = 0}`.
///
/// Rows are `(cos a, sin a, 0)`, `(0, 0, -1)` and `(-sin a, cos a, 0)`; the
/// radial direction goes to `e1` and the axis direction to `-e2`.
pub fn rotation_for_halfplane(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::from_rows([[c, s, 0.0], [0.0, 0.0, -1.0], [-s, c, 0.0]])
}

/// A 2x2 matrix, row-major.
pub type Mat2 = [[f64; 2]; 2];

pub fn mat2_det(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Cofactor matrix of a 2x2 matrix (`m * cof^T = det * I`).
pub fn mat2_cof(m: &Mat2) -> Mat2 {
    [[m[1][1], -m[1][0]], [-m[0][1], m[0][0]]]
}

pub fn mat2_apply(m: &Mat2, p: Point2) -> Point2 {
    Point2::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}
