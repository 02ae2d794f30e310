use serde::{Deserialize, Serialize};

use super::{AxisymProfile, MapField3};
use crate::chart::ChartFamily;
use crate::degree::PlanarMap;
use crate::error::Result;
use crate::geometry::{Mat2, Point2};

/// The planar map `w(x, y) = (u1~, -u2~)(r0 + c x, theta, z0 - c y)` seen by an
/// axisymmetric map on the half-plane `O_theta`, after the rotation taking
/// `O_Theta(theta)` to `{x3 = 0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneRestriction {
    pub profile: AxisymProfile,
    pub theta: f64,
    pub r0: f64,
    pub z0: f64,
    pub c: f64,
}

/// Restriction of an axisymmetric map to the half-plane at angle `theta`,
/// with `(x, y)` mapped to `(r0 + c x, z0 - c y)`.
pub fn restrict_to_halfplane(m: &MapField3, theta: f64, r0: f64, z0: f64, c: f64) -> Result<HalfPlaneRestriction> {
    let profile = m.as_axisym()?.clone();
    Ok(HalfPlaneRestriction {
        profile,
        theta,
        r0,
        z0,
        c,
    })
}

impl HalfPlaneRestriction {
    /// The restriction matching `u o T_r` on the plane `{z3 = z_level}`.
    pub fn for_chart(profile: &AxisymProfile, family: &ChartFamily, r: f64, z_level: f64) -> Self {
        let s = family.scale(r);
        HalfPlaneRestriction {
            profile: profile.clone(),
            theta: family.base.theta + s * z_level,
            r0: family.base.r,
            z0: family.base.z,
            c: s,
        }
    }

    fn coords(&self, p: Point2) -> (f64, f64) {
        (self.r0 + self.c * p.x, self.z0 - self.c * p.y)
    }
}

impl PlanarMap for HalfPlaneRestriction {
    fn eval(&self, p: Point2) -> Point2 {
        let (r, z) = self.coords(p);
        let u1 = self.profile.u1.eval(r, self.theta, z).0;
        let u2 = self.profile.u2.eval(r, self.theta, z).0;
        Point2::new(u1, -u2)
    }

    fn differential(&self, p: Point2) -> Mat2 {
        let (r, z) = self.coords(p);
        let (_, g1) = self.profile.u1.eval(r, self.theta, z);
        let (_, g2) = self.profile.u2.eval(r, self.theta, z);
        let c = self.c;
        [[c * g1[0], -c * g1[2]], [-c * g2[0], c * g2[2]]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::build_family;
    use crate::geometry::{mat2_det, rotation_for_halfplane, Point3};
    use crate::sobolev::catalog;

    #[test]
    fn identity_restriction() {
        let w = restrict_to_halfplane(&MapField3::Axisym(AxisymProfile::identity()), 0.0, 2.0, 0.0, 1.0).unwrap();
        for p in [Point2::new(0.1, 0.2), Point2::new(-0.5, 0.3), Point2::new(0.0, -0.7)] {
            assert!(w.eval(p).distance(Point2::new(2.0 + p.x, p.y)) < 1e-15);
        }
        assert!(restrict_to_halfplane(&MapField3::Identity, 0.0, 2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn rotated_chart_pullback_is_planar_and_matches() {
        let family = build_family(Point3::new(1.2, 1.7, 0.4)).unwrap();
        let r = family.r_prime;
        for name in ["identity", "twisted", "cubic-table", "exponential"] {
            let profile = catalog(name).unwrap();
            let u = MapField3::Axisym(profile.clone());
            for z_level in [-0.3, 0.0, 0.65] {
                let w = HalfPlaneRestriction::for_chart(&profile, &family, r, z_level);
                let rot = rotation_for_halfplane(profile.theta.eval(w.theta));
                for i in 0..64 {
                    for j in 0..64 {
                        let p = Point2::new(-3.2 + 6.4 * i as f64 / 63.0, -3.2 + 6.4 * j as f64 / 63.0);
                        let v = u.eval(family.t_r(r, Point3::new(p.x, p.y, z_level)).unwrap()).unwrap();
                        let image = rot.apply(v);
                        assert!(image.x3.abs() < 1e-12, "{name}: {}", image.x3);
                        assert!(image.xy().distance(w.eval(p)) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn planar_jacobian_positive_with_the_spatial_one() {
        let family = build_family(Point3::new(2.0, 0.0, 0.0)).unwrap();
        let r = family.r_prime;
        for name in ["identity", "shear", "twisted", "oscillating", "cubic-table"] {
            let profile = catalog(name).unwrap();
            let w = HalfPlaneRestriction::for_chart(&profile, &family, r, 0.2);
            for i in 0..16 {
                for j in 0..16 {
                    let p = Point2::new(-3.0 + 0.4 * i as f64, -3.0 + 0.4 * j as f64);
                    let x = family.t_r(r, Point3::new(p.x, p.y, 0.2)).unwrap();
                    if profile.jacobian(x).unwrap() > 0.0 {
                        assert!(mat2_det(&w.differential(p)) > 0.0, "{name}");
                    }
                }
            }
        }
    }
}
