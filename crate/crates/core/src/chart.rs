//! The cylindrical chart `L_{x0}` and the rescaled family `T_r(z) = L^{-1}(alpha r z / R)`.
//!
//! Matrix norms are Frobenius norms throughout.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angular_unit, radial_unit, to_cylindrical, wrap_angle_signed, CylPoint3, Mat3, Point3, E3};
use crate::quadrature::ball_integral;
use crate::rng::substream;
use crate::sobolev::MapField3;

/// Grid size per axis for the sampled suprema in [`build_family`].
pub const SUP_GRID: usize = 32;
/// Inflation applied to every sampled supremum.
pub const SUP_INFLATION: f64 = 1.1;
/// Length of the radius ladder `R' 2^-k`, `k = 0..RADIUS_LADDER`.
pub const RADIUS_LADDER: usize = 11;

/// `L_{x0}(x) = (r - r0, z0 - z, theta - theta0)` with the angle difference in `(-pi, pi]`.
pub fn chart_l(x0: Point3, x: Point3) -> Result<Point3> {
    let base = to_cylindrical(x0)?;
    if x.distance(x0) >= base.r {
        return Err(Error::OutOfChart);
    }
    let c = to_cylindrical(x)?;
    Ok(Point3::new(
        c.r - base.r,
        base.z - c.z,
        wrap_angle_signed(c.theta - base.theta),
    ))
}

/// `L_{x0}^{-1}(y) = (r0 + y1, theta0 + y3, z0 - y2)_cyl`.
pub fn chart_l_inverse(x0: Point3, y: Point3) -> Result<Point3> {
    let base = to_cylindrical(x0)?;
    inverse_from(base, y)
}

fn inverse_from(base: CylPoint3, y: Point3) -> Result<Point3> {
    let r = base.r + y.x1;
    if !(r > 0.0) || !y.is_finite() {
        return Err(Error::OutOfChart);
    }
    let th = base.theta + y.x3;
    Ok(radial_unit(th) * r + E3 * (base.z - y.x2))
}

/// `DL_{x0}(x)`: rows `e_r`, `-e3`, `e_theta / r`.
pub fn chart_l_differential(x: Point3) -> Result<Mat3> {
    let c = to_cylindrical(x)?;
    let er = radial_unit(c.theta);
    let et = angular_unit(c.theta) * (1.0 / c.r);
    Ok(Mat3::from_rows([er.to_array(), (-E3).to_array(), et.to_array()]))
}

/// `DL_{x0}^{-1}(y)`: columns `e_r`, `-e3`, `(r0 + y1) e_theta` at angle `theta0 + y3`.
pub fn chart_l_inverse_differential(x0: Point3, y: Point3) -> Result<Mat3> {
    let base = to_cylindrical(x0)?;
    Ok(inverse_differential_from(base, y))
}

fn inverse_differential_from(base: CylPoint3, y: Point3) -> Mat3 {
    let th = base.theta + y.x3;
    Mat3::from_cols(radial_unit(th), -E3, angular_unit(th) * (base.r + y.x1))
}

/// The constants of the family `T_r` at a base point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartFamily {
    pub x0: Point3,
    pub base: CylPoint3,
    pub alpha: f64,
    pub big_r: f64,
    pub r_prime: f64,
    /// `K = |DL^{-1}(0)| + sup |DL^{-1}(y) - DL^{-1}(0)|`, so `alpha = R / K`.
    pub k: f64,
    pub a: Mat3,
    /// Constant with `det DT_r >= r^3 / c`: `2 K^3 det DL(x0)`.
    pub c: f64,
    /// The shorter constant `2 det DL(x0)`, kept for comparison; it does not
    /// bound `det DT_r` once `K > 1`.
    pub c_printed: f64,
}

/// Builds `alpha, R, R', A, c` at `x0`; suprema over balls are sampled on a
/// [`SUP_GRID`]^3 grid and inflated by [`SUP_INFLATION`].
pub fn build_family(x0: Point3) -> Result<ChartFamily> {
    let base = to_cylindrical(x0)?;
    let dl_inv0 = inverse_differential_from(base, Point3::ZERO);
    let det0 = dl_inv0.det();

    // largest R <= r0/8 with sup |det DL^{-1}(0) - det DL^{-1}(y)| <= det DL^{-1}(0) / 2
    let mut big_r = base.r / 8.0;
    loop {
        let dev = sampled_sup(base, big_r, |y| (inverse_differential_from(base, y).det() - det0).abs())?;
        if SUP_INFLATION * dev <= 0.5 * det0 {
            break;
        }
        big_r *= 0.5;
    }

    let sup_dev = sampled_sup(base, big_r, |y| inverse_differential_from(base, y).sub(&dl_inv0).norm())?;
    let k = dl_inv0.norm() + SUP_INFLATION * sup_dev;
    let alpha = big_r / k;
    let a = dl_inv0.scale(alpha / big_r);

    // R' < R with sup over B_{4R'}(x0) of |DL^{-1}(0) - DL^{-1}(y)| <= R |A| / (2 alpha)
    let bound = big_r * a.norm() / (2.0 * alpha);
    let mut r_prime = big_r / 2.0;
    loop {
        let dev = sampled_sup(base, r_prime, |y| {
            inverse_differential_from(base, y).sub(&dl_inv0).norm()
        })?;
        if SUP_INFLATION * dev <= bound {
            break;
        }
        r_prime *= 0.5;
    }

    let det_dl_x0 = 1.0 / base.r;
    Ok(ChartFamily {
        x0,
        base,
        alpha,
        big_r,
        r_prime,
        k,
        a,
        c: 2.0 * k.powi(3) * det_dl_x0,
        c_printed: 2.0 * det_dl_x0,
    })
}

/// Supremum of `f(L(x))` over a grid on `B_{4 rho}(x0)`.
fn sampled_sup(base: CylPoint3, rho: f64, f: impl Fn(Point3) -> f64) -> Result<f64> {
    let x0 = base.to_cartesian();
    let n = SUP_GRID;
    let radius = 4.0 * rho;
    let mut sup: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t = |m: usize| -radius + 2.0 * radius * m as f64 / (n - 1) as f64;
                let d = Point3::new(t(i), t(j), t(k));
                if d.norm() > radius {
                    continue;
                }
                let y = chart_l(x0, x0 + d)?;
                sup = sup.max(f(y));
            }
        }
    }
    Ok(sup)
}

impl ChartFamily {
    /// `alpha r / R`.
    pub fn scale(&self, r: f64) -> f64 {
        self.alpha * r / self.big_r
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if r > 0.0 && r <= self.r_prime * (1.0 + 1e-12) {
            Ok(())
        } else {
            Err(Error::RadiusOutOfRange { r, r_max: self.r_prime })
        }
    }

    /// `T_r(z) = L^{-1}(alpha r z / R)`.
    pub fn t_r(&self, r: f64, z: Point3) -> Result<Point3> {
        self.check_radius(r)?;
        inverse_from(self.base, z * self.scale(r))
    }

    /// `DT_r(z) = (alpha r / R) DL^{-1}(alpha r z / R)`.
    pub fn dt_r(&self, r: f64, z: Point3) -> Result<Mat3> {
        self.check_radius(r)?;
        let s = self.scale(r);
        Ok(inverse_differential_from(self.base, z * s).scale(s))
    }

    /// The ladder `R' 2^-k`, `k = 0..n`.
    pub fn radius_ladder(&self, n: usize) -> Vec<f64> {
        (0..n).map(|k| self.r_prime * 0.5f64.powi(k as i32)).collect()
    }
}

/// Per-radius checks of the three family properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusCheck {
    pub radius: f64,
    /// `max |T_r(z) - x0| / (4 r)`; containment needs `< 1`.
    pub containment_ratio: f64,
    /// `min det DT_r(z) c / r^3`; needs `>= 1`.
    pub min_det_ratio: f64,
    /// Same ratio with the shorter constant `c_printed`.
    pub min_det_ratio_printed: f64,
    /// `sup |A - DT_r(z) / r|`.
    pub sup_deviation: f64,
    /// `T_r` evaluable on every sample of `B_4(0)`.
    pub evaluable: bool,
    pub centre_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: ChartFamily,
    pub a_norm: f64,
    pub rows: Vec<RadiusCheck>,
    /// `sup_deviation` strictly decreasing along the ladder.
    pub decreasing: bool,
    pub all_pass: bool,
}

/// Samples `n_samples` points of `B_4(0)` per radius of an `n_radii` ladder.
pub fn verify_family(f: &ChartFamily, n_samples: usize, n_radii: usize, seed: u64) -> FamilyReport {
    let mut rng = substream(seed, 0);
    let samples: Vec<Point3> = (0..n_samples).map(|_| uniform_in_ball(&mut rng, 4.0)).collect();
    let a_norm = f.a.norm();
    let rows: Vec<RadiusCheck> = f
        .radius_ladder(n_radii)
        .into_iter()
        .map(|r| check_radius(f, r, &samples))
        .collect();
    let decreasing = rows.windows(2).all(|w| w[1].sup_deviation < w[0].sup_deviation);
    let all_pass = decreasing
        && rows.iter().all(|row| {
            row.evaluable
                && row.containment_ratio < 1.0
                && row.min_det_ratio >= 1.0
                && row.sup_deviation <= a_norm / 2.0
                && row.centre_error <= 1e-10
        });
    FamilyReport {
        family: *f,
        a_norm,
        rows,
        decreasing,
        all_pass,
    }
}

fn check_radius(f: &ChartFamily, r: f64, samples: &[Point3]) -> RadiusCheck {
    let mut containment: f64 = 0.0;
    let mut min_det = f64::INFINITY;
    let mut sup_dev: f64 = 0.0;
    let mut evaluable = true;
    for z in samples {
        match (f.t_r(r, *z), f.dt_r(r, *z)) {
            (Ok(x), Ok(dt)) => {
                containment = containment.max(x.distance(f.x0) / (4.0 * r));
                min_det = min_det.min(dt.det() / r.powi(3));
                sup_dev = sup_dev.max(f.a.sub(&dt.scale(1.0 / r)).norm());
            }
            _ => evaluable = false,
        }
    }
    let centre_error = f
        .t_r(r, Point3::ZERO)
        .map(|x| x.distance(f.x0))
        .unwrap_or(f64::INFINITY);
    RadiusCheck {
        radius: r,
        containment_ratio: containment,
        min_det_ratio: min_det * f.c,
        min_det_ratio_printed: min_det * f.c_printed,
        sup_deviation: sup_dev,
        evaluable,
        centre_error,
    }
}

/// Uniform sample of the open ball of the given radius about the origin.
pub fn uniform_in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm_sq() < 1.0 {
            return p * radius;
        }
    }
}

/// `int_{B_4(0)} |(u_j(T_r z) - u(x0)) / r - Du(x0)[A z]| dz` by tensor Gauss-Legendre
/// quadrature with `quad_n` nodes per spherical coordinate.
pub fn lemma32_estimate(u_j: &MapField3, u: &MapField3, f: &ChartFamily, r: f64, quad_n: usize) -> Result<f64> {
    if quad_n < 32 {
        return Err(Error::InvalidParameter(format!(
            "quad_n must be at least 32, got {quad_n}"
        )));
    }
    f.check_radius(r)?;
    let ux0 = u.eval(f.x0)?;
    let m = u.differential(f.x0)?.mul(&f.a);
    let failure = std::cell::RefCell::new(None);
    let value = ball_integral(Point3::ZERO, 4.0, quad_n, |z| {
        let x = match f.t_r(r, z) {
            Ok(x) => x,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        match u_j.eval(x) {
            Ok(y) => ((y - ux0) * (1.0 / r) - m.apply(z)).norm(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    });
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point3, b: Point3, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn chart_examples() {
        let x0 = Point3::new(2.0, 0.0, 0.0);
        assert!(close(
            chart_l(x0, Point3::new(2.0, 0.0, 1.0)).unwrap(),
            Point3::new(0.0, -1.0, 0.0),
            1e-15
        ));
        assert!(close(chart_l(x0, x0).unwrap(), Point3::ZERO, 0.0));
        assert!(close(
            chart_l(x0, Point3::new(3.0, 0.0, 0.0)).unwrap(),
            Point3::new(1.0, 0.0, 0.0),
            1e-15
        ));
        assert_eq!(chart_l(x0, Point3::new(4.5, 0.0, 0.0)), Err(Error::OutOfChart));
        assert!(matches!(
            chart_l(Point3::new(0.0, 0.0, 1.0), x0),
            Err(Error::AxisPoint(..))
        ));
    }

    #[test]
    fn chart_inverse_roundtrip_and_differentials() {
        let x0 = Point3::new(-1.0, 1.5, 0.3);
        for y in [Point3::new(0.1, -0.2, 0.05), Point3::new(-0.3, 0.4, -0.2)] {
            let x = chart_l_inverse(x0, y).unwrap();
            assert!(close(chart_l(x0, x).unwrap(), y, 1e-12));
            let d = chart_l_differential(x).unwrap();
            let d_inv = chart_l_inverse_differential(x0, y).unwrap();
            assert!(d.mul(&d_inv).max_abs_diff(&Mat3::IDENTITY) < 1e-12);
            // closed-form differentiation oracle: central differences of the inverse chart
            let h = 1e-6;
            for k in 0..3 {
                let mut e = [0.0; 3];
                e[k] = h;
                let e = Point3::from_array(e);
                let fd = (chart_l_inverse(x0, y + e).unwrap() - chart_l_inverse(x0, y - e).unwrap()) * (0.5 / h);
                assert!(close(fd, d_inv.col(k), 1e-8));
            }
        }
    }

    #[test]
    fn family_at_standard_base_point() {
        let x0 = Point3::new(2.0, 0.0, 0.0);
        let f = build_family(x0).unwrap();
        assert!(f.r_prime < f.big_r && f.a.det() > 0.0 && f.c > 0.0);
        // r0/8 = 0.25 fails the determinant condition after inflation (1.1 > 1), half of it passes
        assert!((f.big_r - 0.125).abs() < 1e-15);
        // A is a positive multiple of the inverse differential at 0
        let d_inv0 = Mat3::from_cols(Point3::new(1.0, 0.0, 0.0), -E3, Point3::new(0.0, 2.0, 0.0));
        assert!(f.a.max_abs_diff(&d_inv0.scale(1.0 / f.k)) < 1e-15);
        assert!(close(f.t_r(f.r_prime, Point3::ZERO).unwrap(), x0, 1e-15));
        assert!(matches!(
            f.t_r(2.0 * f.r_prime, Point3::ZERO),
            Err(Error::RadiusOutOfRange { .. })
        ));
        let report = verify_family(&f, 1000, RADIUS_LADDER, 7);
        assert!(report.all_pass, "{report:?}");
    }

    #[test]
    fn printed_constant_is_too_small_for_the_determinant_bound() {
        let f = build_family(Point3::new(2.0, 0.0, 0.0)).unwrap();
        let report = verify_family(&f, 200, 3, 1);
        assert!(report.rows.iter().all(|r| r.min_det_ratio >= 1.0));
        assert!(report.rows.iter().all(|r| r.min_det_ratio_printed < 1.0));
    }

    #[test]
    fn far_base_point_ladder_decreases() {
        let f = build_family(Point3::new(5.0, 0.0, 0.0)).unwrap();
        let report = verify_family(&f, 500, RADIUS_LADDER, 3);
        let first = report.rows.first().unwrap().sup_deviation;
        let last = report.rows.last().unwrap().sup_deviation;
        assert!(last < first);
        assert!(report.all_pass);
    }

    #[test]
    fn lemma32_identity_decays_along_ladder() {
        let f = build_family(Point3::new(2.0, 0.0, 0.0)).unwrap();
        let id = MapField3::Identity;
        let values: Vec<f64> = f
            .radius_ladder(4)
            .into_iter()
            .map(|r| lemma32_estimate(&id, &id, &f, r, 32).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    }
}
