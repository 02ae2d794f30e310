//! The solid torus ("anuloid") with core radius 2 and tube radius 1, its
//! parametrisation `Phi(xi, eta)`, the two fibrations by horizontal and
//! vertical circles, and the planar slice data used by the planar-degree
//! formula for linking numbers.
//!
//! Coarea Jacobians: the values returned by [`coarea_jacobian_eta`] and
//! [`coarea_jacobian_xi_tilde`] are the Gram determinants
//! `sqrt(det(D D^T))` of the chart differentials. The closed forms
//! `sqrt(x1^2 + x2^2)` and `((r-2)^2 + z^2) / r^2` that circulate for these
//! charts are kept as [`PrintedJacobian`] so the coarea audit can show that
//! they do not balance the volume identity.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3, AXIS_TOLERANCE_SQ};

pub const CORE_RADIUS: f64 = 2.0;
pub const TUBE_RADIUS: f64 = 1.0;
/// Radius of the parameter disks for `a` and around `e1` for `b`.
pub const PARAM_RADIUS: f64 = 0.1;
/// Below this `|(|b| - |a2|)|` the vertical circle only grazes the slice plane.
pub const TANGENTIAL_TOLERANCE: f64 = 1e-12;

/// Squared distance from `p` to the core circle `C_hor`.
pub fn tube_distance_sq(p: Point3) -> f64 {
    let rho = p.x1.hypot(p.x2);
    (rho - CORE_RADIUS).powi(2) + p.x3 * p.x3
}

/// Whether `p` lies in the closed anuloid (with a 1e-12 slack).
pub fn in_closed_anuloid(p: Point3) -> bool {
    tube_distance_sq(p) <= 1.0 + 1e-12
}

/// Parameters `(xi, eta)` with `xi` on the unit circle and `eta` in the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusParam {
    pub xi: Point2,
    pub eta: Point2,
}

impl TorusParam {
    pub fn new(xi: Point2, eta: Point2) -> Result<Self> {
        if (xi.norm() - 1.0).abs() >= 1e-12 || eta.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "torus parameter needs |xi| = 1 and |eta| <= 1, got |xi| = {}, |eta| = {}",
                xi.norm(),
                eta.norm()
            )));
        }
        Ok(TorusParam { xi, eta })
    }

    pub fn phi(&self) -> Point3 {
        // xi is a unit vector, so this never fails
        phi(self.xi, self.eta).expect("unit xi")
    }
}

/// `Phi(xi, eta) = ((|xi| eta1 + 2) xi^, |xi| eta2)` for any non-zero `xi`.
pub fn phi(xi: Point2, eta: Point2) -> Result<Point3> {
    let n = xi.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::ZeroXi);
    }
    let radial = n * eta.x + CORE_RADIUS;
    Ok(Point3::new(radial * xi.x / n, radial * xi.y / n, n * eta.y))
}

/// Parameter of a horizontal circle `mu_a`, `|a| < 1/10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkParamA(Point2);

impl LinkParamA {
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        let a = Point2::new(a1, a2);
        if !(a.norm() < PARAM_RADIUS) {
            return Err(Error::InvalidParameter(format!("|a| = {} must be < 1/10", a.norm())));
        }
        Ok(LinkParamA(a))
    }

    pub fn get(self) -> Point2 {
        self.0
    }

    /// Uniform sample from the open disk of radius 1/10.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let rho = PARAM_RADIUS * rng.gen::<f64>().sqrt();
            let a = Point2::polar(rho, TAU * rng.gen::<f64>());
            if let Ok(p) = LinkParamA::new(a.x, a.y) {
                return p;
            }
        }
    }
}

/// Parameter of a vertical circle `nu_b`, `|b| < 1` and `|b - e1| < 1/10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkParamB(Point2);

impl LinkParamB {
    pub fn new(b1: f64, b2: f64) -> Result<Self> {
        let b = Point2::new(b1, b2);
        if !(b.norm() < 1.0 && b.distance(Point2::new(1.0, 0.0)) < PARAM_RADIUS) {
            return Err(Error::InvalidParameter(format!(
                "b = ({b1}, {b2}) must satisfy |b| < 1 and |b - e1| < 1/10"
            )));
        }
        Ok(LinkParamB(b))
    }

    /// The canonical `b = e1`, which sits on the boundary of the open parameter domain.
    pub fn canonical() -> Self {
        LinkParamB(Point2::new(1.0, 0.0))
    }

    pub fn get(self) -> Point2 {
        self.0
    }

    /// Uniform sample by rejection from the disk of radius 1/10 around `e1`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let rho = PARAM_RADIUS * rng.gen::<f64>().sqrt();
            let b = Point2::new(1.0, 0.0) + Point2::polar(rho, TAU * rng.gen::<f64>());
            if let Ok(p) = LinkParamB::new(b.x, b.y) {
                return p;
            }
        }
    }
}

/// Horizontal circle `mu_a(t) = ((a1 + 2) cos t, (a1 + 2) sin t, a2)`.
pub fn mu_a(a: LinkParamA, t: f64) -> Point3 {
    let a = a.get();
    let (s, c) = t.sin_cos();
    Point3::new((a.x + CORE_RADIUS) * c, (a.x + CORE_RADIUS) * s, a.y)
}

/// Vertical circle `nu_b(t) = ((|b| cos t + 2) b^, |b| sin t)`.
pub fn nu_b(b: LinkParamB, t: f64) -> Point3 {
    let b = b.get();
    let n = b.norm();
    let (s, c) = t.sin_cos();
    let radial = n * c + CORE_RADIUS;
    Point3::new(radial * b.x / n, radial * b.y / n, n * s)
}

/// The chart `x -> (xi(x), eta(x))` inverting `Phi` on the closed anuloid.
pub fn chart_xi_eta(p: Point3) -> Result<TorusParam> {
    let rho_sq = p.x1 * p.x1 + p.x2 * p.x2;
    if rho_sq < AXIS_TOLERANCE_SQ {
        return Err(Error::AxisPoint(p.x1, p.x2, p.x3));
    }
    let d = tube_distance_sq(p);
    if d > 1.0 + 1e-12 {
        return Err(Error::OutsideAnuloid(d));
    }
    let rho = rho_sq.sqrt();
    Ok(TorusParam {
        xi: Point2::new(p.x1 / rho, p.x2 / rho),
        eta: Point2::new(rho - CORE_RADIUS, p.x3),
    })
}

/// The chart `x -> (xi~(x), eta~(x))` with `xi~` in the punctured disk and
/// `eta~` on the unit circle, defined off the core circle.
pub fn chart_tilde(p: Point3) -> Result<(Point2, Point2)> {
    let rho_sq = p.x1 * p.x1 + p.x2 * p.x2;
    if rho_sq < AXIS_TOLERANCE_SQ {
        return Err(Error::AxisPoint(p.x1, p.x2, p.x3));
    }
    let d = tube_distance_sq(p);
    if d > 1.0 + 1e-12 {
        return Err(Error::OutsideAnuloid(d));
    }
    if d < 1e-18 {
        return Err(Error::OnCoreCircle);
    }
    let rho = rho_sq.sqrt();
    let s = d.sqrt();
    let xi_t = Point2::new(s * p.x1 / rho, s * p.x2 / rho);
    let eta_t = Point2::new((rho - CORE_RADIUS) / s, p.x3 / s);
    Ok((xi_t, eta_t))
}

/// Coarea Jacobian of `eta`: the rows of `D eta` are orthonormal, so it is 1.
pub fn coarea_jacobian_eta(p: Point3) -> Result<f64> {
    chart_xi_eta(p).map(|_| 1.0)
}

/// Coarea Jacobian of `xi~`: `sqrt((r-2)^2 + z^2) / r`.
pub fn coarea_jacobian_xi_tilde(p: Point3) -> Result<f64> {
    chart_tilde(p)?;
    let r = p.x1.hypot(p.x2);
    Ok(tube_distance_sq(p).sqrt() / r)
}

/// The alternative closed forms for the coarea Jacobians, kept for auditing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrintedJacobian {
    /// `J_eta = sqrt(x1^2 + x2^2)`
    Eta,
    /// `J_xi~ = ((r-2)^2 + z^2) / r^2`
    XiTilde,
}

impl PrintedJacobian {
    pub fn eval(self, p: Point3) -> f64 {
        let r = p.x1.hypot(p.x2);
        match self {
            PrintedJacobian::Eta => r,
            PrintedJacobian::XiTilde => tube_distance_sq(p) / (r * r),
        }
    }
}

/// The slice of the link picture in the plane `x3 = a2` containing `mu_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarSlice {
    pub a: LinkParamA,
    /// Radius of `S_a`, the projection of `mu_a`, which is `a1 + 2`.
    pub circle_radius: f64,
    /// Projection of the crossing of `nu_b` with the slice plane inside the disk.
    pub p_ab: Point2,
    /// Projection of the crossing outside the disk.
    pub q_ab: Point2,
    pub z_level: f64,
}

/// Intersections of `nu_b` with the plane `H_{a2}`, projected to the plane.
pub fn planar_slice(a: LinkParamA, b: LinkParamB) -> Result<PlanarSlice> {
    let av = a.get();
    let bv = b.get();
    let bn = bv.norm();
    if (bn - av.y.abs()).abs() < TANGENTIAL_TOLERANCE {
        return Err(Error::Tangential(av.y));
    }
    if bn <= av.y.abs() {
        return Err(Error::NoIntersection { b_norm: bn, z: av.y });
    }
    // sin t = a2 / |b|; the two solutions differ in the sign of cos t
    let half_chord = (bn * bn - av.y * av.y).sqrt();
    let dir = Point2::new(bv.x / bn, bv.y / bn);
    let p_ab = dir * (CORE_RADIUS - half_chord);
    let q_ab = dir * (CORE_RADIUS + half_chord);
    Ok(PlanarSlice {
        a,
        circle_radius: av.x + CORE_RADIUS,
        p_ab,
        q_ab,
        z_level: av.y,
    })
}

/// Volume of the anuloid, `2 pi^2 R r^2` with `R = 2`, `r = 1`.
pub fn anuloid_volume() -> f64 {
    2.0 * PI * PI * CORE_RADIUS * TUBE_RADIUS * TUBE_RADIUS
}
