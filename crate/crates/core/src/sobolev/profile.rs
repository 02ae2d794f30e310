use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angular_unit, radial_unit, to_cylindrical, wrap_angle, Mat3, Point3, E3};

/// Default radius of the excluded tube around the x3-axis.
pub const DEFAULT_R_MIN: f64 = 1e-3;
/// Net size for the strict-monotonicity check on the angle map.
pub const THETA_NET: usize = 4096;

/// The angular part `Theta` of a generalised axisymmetric map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ThetaMap {
    Identity,
    /// `theta + amplitude * sin(theta)`, increasing for `|amplitude| < 1`.
    Sine {
        amplitude: f64,
    },
    /// Monotone cubic through `(theta_i, Theta_i)` on `[0, 2pi]`, extended by
    /// `Theta(theta + 2pi) = Theta(theta) + 2pi`.
    Table {
        points: Vec<[f64; 2]>,
    },
}

impl ThetaMap {
    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_with_derivative(theta).0
    }

    pub fn derivative(&self, theta: f64) -> f64 {
        self.eval_with_derivative(theta).1
    }

    /// `(Theta(theta), Theta'(theta))`.
    pub fn eval_with_derivative(&self, theta: f64) -> (f64, f64) {
        match self {
            ThetaMap::Identity => (theta, 1.0),
            ThetaMap::Sine { amplitude } => (theta + amplitude * theta.sin(), 1.0 + amplitude * theta.cos()),
            ThetaMap::Table { points } => {
                let turns = (theta / TAU).floor();
                let (v, d) = pchip_periodic(points, theta - turns * TAU);
                (v + turns * TAU, d)
            }
        }
    }

    /// Checks `Theta(2pi) - Theta(0) = 2pi` and strict increase on a
    /// [`THETA_NET`]-point net.
    pub fn validate(&self) -> Result<()> {
        match self {
            ThetaMap::Sine { amplitude } if !(amplitude.abs() < 1.0) => {
                return Err(Error::InvalidParameter(format!(
                    "sine angle map needs |amplitude| < 1, got {amplitude}"
                )))
            }
            ThetaMap::Table { points } => validate_table(points)?,
            _ => {}
        }
        let span = self.eval(TAU) - self.eval(0.0);
        if (span - TAU).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "Theta(2pi) - Theta(0) = {span}, expected 2pi"
            )));
        }
        let mut prev = self.eval(0.0);
        for i in 1..=THETA_NET {
            let next = self.eval(TAU * i as f64 / THETA_NET as f64);
            if !(next > prev) {
                return Err(Error::InvalidParameter("Theta is not strictly increasing".into()));
            }
            prev = next;
        }
        Ok(())
    }
}

fn validate_table(points: &[[f64; 2]]) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("Theta table needs at least two points".into()));
    }
    let first = points[0];
    let last = points[points.len() - 1];
    if first[0] != 0.0 || (last[0] - TAU).abs() > 1e-12 {
        return Err(Error::InvalidParameter(
            "Theta table must span theta in [0, 2pi]".into(),
        ));
    }
    if ((last[1] - first[1]) - TAU).abs() > 1e-12 {
        return Err(Error::InvalidParameter(
            "Theta table must satisfy Theta(2pi) = Theta(0) + 2pi".into(),
        ));
    }
    for w in points.windows(2) {
        if !(w[1][0] > w[0][0] && w[1][1] > w[0][1]) {
            return Err(Error::InvalidParameter(
                "Theta table must be strictly increasing in both columns".into(),
            ));
        }
    }
    Ok(())
}

/// Fritsch-Carlson monotone cubic on one period, with end slopes taken from
/// the periodic continuation.
fn pchip_periodic(points: &[[f64; 2]], t: f64) -> (f64, f64) {
    let n = points.len();
    let h = |i: usize| points[i + 1][0] - points[i][0];
    let delta = |i: usize| (points[i + 1][1] - points[i][1]) / h(i);
    let slope = |i: usize| -> f64 {
        let (left, right, hl, hr) = if i == 0 || i == n - 1 {
            (delta(n - 2), delta(0), h(n - 2), h(0))
        } else {
            (delta(i - 1), delta(i), h(i - 1), h(i))
        };
        if left * right <= 0.0 {
            return 0.0;
        }
        let w1 = 2.0 * hr + hl;
        let w2 = hr + 2.0 * hl;
        (w1 + w2) / (w1 / left + w2 / right)
    };
    let k = match points.iter().position(|p| p[0] > t) {
        Some(0) => 0,
        Some(i) => i - 1,
        None => n - 2,
    };
    let hk = h(k);
    let s = (t - points[k][0]) / hk;
    let (y0, y1) = (points[k][1], points[k + 1][1]);
    let (m0, m1) = (slope(k), slope(k + 1));
    let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    let h10 = s * (1.0 - s) * (1.0 - s);
    let h01 = s * s * (3.0 - 2.0 * s);
    let h11 = s * s * (s - 1.0);
    let value = h00 * y0 + h10 * hk * m0 + h01 * y1 + h11 * hk * m1;
    let d00 = 6.0 * s * s - 6.0 * s;
    let d10 = 3.0 * s * s - 4.0 * s + 1.0;
    let d01 = -d00;
    let d11 = 3.0 * s * s - 2.0 * s;
    let deriv = (d00 * y0 + d01 * y1) / hk + d10 * m0 + d11 * m1;
    (value, deriv)
}

/// Value and `(d/dr, d/dtheta, d/dz)` of a profile component.
pub type ValueGrad = (f64, [f64; 3]);

/// The radial profile `u1~(r, theta, z) >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RadialProfile {
    /// `scale * r`.
    Linear { scale: f64 },
    /// `r * exp(rate * z)`.
    Exponential { rate: f64 },
    /// `r * (1 + sin(j z) / j)`.
    Oscillating { j: f64 },
    /// `r * (1 + eps * cos(theta))`.
    Modulated { eps: f64 },
}

impl RadialProfile {
    pub fn eval(&self, r: f64, theta: f64, z: f64) -> ValueGrad {
        match *self {
            RadialProfile::Linear { scale } => (scale * r, [scale, 0.0, 0.0]),
            RadialProfile::Exponential { rate } => {
                let e = (rate * z).exp();
                (r * e, [e, 0.0, r * rate * e])
            }
            RadialProfile::Oscillating { j } => {
                let f = 1.0 + (j * z).sin() / j;
                (r * f, [f, 0.0, r * (j * z).cos()])
            }
            RadialProfile::Modulated { eps } => {
                let f = 1.0 + eps * theta.cos();
                (r * f, [f, -r * eps * theta.sin(), 0.0])
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            RadialProfile::Linear { scale } => scale > 0.0 && scale.is_finite(),
            RadialProfile::Exponential { rate } => rate.is_finite(),
            RadialProfile::Oscillating { j } => j >= 1.0 && j.is_finite(),
            RadialProfile::Modulated { eps } => eps.abs() < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "radial profile parameters out of range: {self:?}"
            )))
        }
    }
}

/// The axial profile `u2~(r, theta, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxialProfile {
    /// `scale * z`.
    Linear { scale: f64 },
    /// `z + k * r`.
    Shear { k: f64 },
    /// `z + k * z^3`.
    Cubic { k: f64 },
    /// `z + eps * sin(theta)`.
    Twist { eps: f64 },
}

impl AxialProfile {
    pub fn eval(&self, r: f64, theta: f64, z: f64) -> ValueGrad {
        match *self {
            AxialProfile::Linear { scale } => (scale * z, [0.0, 0.0, scale]),
            AxialProfile::Shear { k } => (z + k * r, [k, 0.0, 1.0]),
            AxialProfile::Cubic { k } => (z + k * z * z * z, [0.0, 0.0, 1.0 + 3.0 * k * z * z]),
            AxialProfile::Twist { eps } => (z + eps * theta.sin(), [0.0, eps * theta.cos(), 1.0]),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            AxialProfile::Linear { scale } => scale.is_finite() && scale != 0.0,
            AxialProfile::Shear { k } => k.is_finite(),
            AxialProfile::Cubic { k } => k.is_finite() && k >= 0.0,
            AxialProfile::Twist { eps } => eps.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "axial profile parameters out of range: {self:?}"
            )))
        }
    }
}

/// A generalised axisymmetric map
/// `u(r, theta, z) = u1~ (cos Theta, sin Theta, 0) + u2~ e3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisymProfile {
    pub theta: ThetaMap,
    pub u1: RadialProfile,
    pub u2: AxialProfile,
    /// Points with cylindrical radius below this are rejected.
    #[serde(default = "default_r_min")]
    pub r_min: f64,
}

fn default_r_min() -> f64 {
    DEFAULT_R_MIN
}

/// Cylindrical frame data of `u` at a point.
#[derive(Debug, Clone, Copy)]
struct Local {
    r: f64,
    theta: f64,
    big_theta: f64,
    big_theta_prime: f64,
    u1: ValueGrad,
    u2: ValueGrad,
}

impl AxisymProfile {
    pub fn new(theta: ThetaMap, u1: RadialProfile, u2: AxialProfile) -> Result<Self> {
        let p = AxisymProfile {
            theta,
            u1,
            u2,
            r_min: DEFAULT_R_MIN,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn identity() -> Self {
        AxisymProfile {
            theta: ThetaMap::Identity,
            u1: RadialProfile::Linear { scale: 1.0 },
            u2: AxialProfile::Linear { scale: 1.0 },
            r_min: DEFAULT_R_MIN,
        }
    }

    /// Parameter checks plus `u1~ >= 0` on a sample box `r in [r_min, 8]`, `|z| <= 8`.
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "r_min must be positive, got {}",
                self.r_min
            )));
        }
        self.theta.validate()?;
        self.u1.validate()?;
        self.u2.validate()?;
        for i in 0..=16 {
            let r = self.r_min + (8.0 - self.r_min) * i as f64 / 16.0;
            for k in 0..32 {
                let th = TAU * k as f64 / 32.0;
                for l in 0..=16 {
                    let z = -8.0 + l as f64;
                    if self.u1.eval(r, th, z).0 < 0.0 {
                        return Err(Error::InvalidParameter("u1~ takes negative values".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn local(&self, x: Point3) -> Result<Local> {
        let c = to_cylindrical(x)?;
        if c.r < self.r_min {
            return Err(Error::AxisPoint(x.x1, x.x2, x.x3));
        }
        let (big_theta, big_theta_prime) = self.theta.eval_with_derivative(c.theta);
        Ok(Local {
            r: c.r,
            theta: c.theta,
            big_theta,
            big_theta_prime,
            u1: self.u1.eval(c.r, c.theta, c.z),
            u2: self.u2.eval(c.r, c.theta, c.z),
        })
    }

    /// `u(x)`.
    pub fn eval(&self, x: Point3) -> Result<Point3> {
        let l = self.local(x)?;
        Ok(radial_unit(l.big_theta) * l.u1.0 + E3 * l.u2.0)
    }

    /// Image angle `Theta(theta) mod 2pi` of the half-plane through `x`.
    pub fn image_angle(&self, theta: f64) -> f64 {
        wrap_angle(self.theta.eval(theta))
    }

    /// Differential of `u` in the cylindrical frames: rows are the
    /// `(e_r(Theta), e_theta(Theta), e3)` components, columns the derivatives
    /// along `(e_r(theta), e_theta(theta), e3)`.
    pub fn frame_differential(&self, x: Point3) -> Result<Mat3> {
        let l = self.local(x)?;
        Ok(frame_matrix(&l))
    }

    /// Cartesian `Du(x)`, assembled from the frame differential.
    pub fn differential(&self, x: Point3) -> Result<Mat3> {
        let l = self.local(x)?;
        let inner = frame_matrix(&l);
        let out = Mat3::from_cols(radial_unit(l.big_theta), angular_unit(l.big_theta), E3);
        let inp = Mat3::from_cols(radial_unit(l.theta), angular_unit(l.theta), E3);
        Ok(out.mul(&inner).mul(&inp.transpose()))
    }

    /// `det Du(x)`.
    pub fn jacobian(&self, x: Point3) -> Result<f64> {
        // the frame rotations have determinant one
        Ok(self.frame_differential(x)?.det())
    }
}

fn frame_matrix(l: &Local) -> Mat3 {
    let (u1, g1) = l.u1;
    let (_, g2) = l.u2;
    Mat3::from_rows([
        [g1[0], g1[1] / l.r, g1[2]],
        [0.0, u1 * l.big_theta_prime / l.r, 0.0],
        [g2[0], g2[1] / l.r, g2[2]],
    ])
}

/// Named catalog of profiles. `orientation_preserving` entries have
/// `det Du > 0` and are injective.
pub fn catalog(name: &str) -> Result<AxisymProfile> {
    use AxialProfile as A;
    use RadialProfile as R;
    let (theta, u1, u2) = match name {
        "identity" => (ThetaMap::Identity, R::Linear { scale: 1.0 }, A::Linear { scale: 1.0 }),
        "scaled" => (ThetaMap::Identity, R::Linear { scale: 1.5 }, A::Linear { scale: 1.0 }),
        "shear" => (ThetaMap::Identity, R::Linear { scale: 1.0 }, A::Shear { k: 0.1 }),
        "sine-angle" => (
            ThetaMap::Sine { amplitude: 0.3 },
            R::Linear { scale: 1.0 },
            A::Linear { scale: 1.0 },
        ),
        "exponential" => (
            ThetaMap::Identity,
            R::Exponential { rate: 1.0 },
            A::Linear { scale: 1.0 },
        ),
        "oscillating" => (ThetaMap::Identity, R::Oscillating { j: 8.0 }, A::Linear { scale: 1.0 }),
        "twisted" => (
            ThetaMap::Sine { amplitude: 0.2 },
            R::Modulated { eps: 0.25 },
            A::Twist { eps: 0.3 },
        ),
        "cubic-table" => (
            ThetaMap::Table { points: table_points() },
            R::Exponential { rate: 0.5 },
            A::Cubic { k: 0.2 },
        ),
        "axial-flip" => (ThetaMap::Identity, R::Linear { scale: 1.0 }, A::Linear { scale: -1.0 }),
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    AxisymProfile::new(theta, u1, u2)
}

/// Catalog names in a fixed order.
pub const CATALOG: [&str; 9] = [
    "identity",
    "scaled",
    "shear",
    "sine-angle",
    "exponential",
    "oscillating",
    "twisted",
    "cubic-table",
    "axial-flip",
];

/// Whether a catalog entry is orientation-preserving and injective.
pub fn catalog_orientation_preserving(name: &str) -> bool {
    name != "axial-flip"
}

fn table_points() -> Vec<[f64; 2]> {
    let knots = [0.0, 0.7, 1.9, 3.1, 4.0, 5.2, TAU];
    knots.iter().map(|&t| [t, t + 0.25 * (2.0 * t).sin() * 0.5]).collect()
}
