use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{linking_gauss, sample_curve, LinkResult};
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};
use crate::torus::{mu_a, nu_b, LinkParamA, LinkParamB};

/// Number of directions in the angular net used by [`smallest_singular_value`].
pub const SINGULAR_NET_SIZE: usize = 3600;
const REFINEMENT_STEPS: usize = 20;

/// `m* = min_{|z|=1} |M z|`: the best point of a 60 x 60 spherical net,
/// polished by inverse iteration on `M^T M`.
pub fn smallest_singular_value(m: &Mat3) -> Result<f64> {
    let side = (SINGULAR_NET_SIZE as f64).sqrt() as usize;
    let mut best = (f64::INFINITY, Point3::new(0.0, 0.0, 1.0));
    for i in 0..side {
        let polar = PI * (i as f64 + 0.5) / side as f64;
        for k in 0..side {
            let azimuth = TAU * k as f64 / side as f64;
            let z = Point3::new(polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos());
            let value = m.apply(z).norm();
            if value < best.0 {
                best = (value, z);
            }
        }
    }
    let gram_inv = m.transpose().mul(m).inverse()?;
    let mut z = best.1;
    let mut value = best.0;
    for _ in 0..REFINEMENT_STEPS {
        let next = match gram_inv.apply(z).normalized() {
            Some(n) => n,
            None => break,
        };
        let next_value = m.apply(next).norm();
        if next_value > value {
            break;
        }
        z = next;
        value = next_value;
    }
    Ok(value)
}

/// Outcome of one near-isometry run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearIsometryReport {
    pub link: LinkResult,
    pub m_star: f64,
    /// Largest `|perturbation|` seen on the sampled vertices of both circles.
    pub perturbation_sup: f64,
    pub det_sign: i64,
}

/// Links `(v o mu_a, v o nu_b)` for `v(z) = M z + perturbation(z)`, sampled
/// with `n` vertices per circle and evaluated by the Gauss route.
///
/// The perturbation must stay within `m*/10` on every sampled vertex.
pub fn near_isometry_experiment(
    m: &Mat3,
    perturbation: impl Fn(Point3) -> Point3,
    a: LinkParamA,
    b: LinkParamB,
    n: usize,
) -> Result<NearIsometryReport> {
    let det = m.det();
    if !det.is_finite() || det == 0.0 {
        return Err(Error::Singular(det));
    }
    let m_star = smallest_singular_value(m)?;
    let bound = m_star / 10.0;
    let mu = sample_curve(|t| mu_a(a, t), n)?;
    let nu = sample_curve(|t| nu_b(b, t), n)?;
    let sup = mu
        .vertices()
        .iter()
        .chain(nu.vertices())
        .map(|p| perturbation(*p).norm())
        .fold(0.0, f64::max);
    if !(sup <= bound) {
        return Err(Error::PerturbationTooLarge { sup, bound });
    }
    let v = |p: Point3| Ok(m.apply(p) + perturbation(p));
    let link = linking_gauss(&mu.map(v)?, &nu.map(v)?);
    Ok(NearIsometryReport {
        link,
        m_star,
        perturbation_sup: sup,
        det_sign: if det > 0.0 { 1 } else { -1 },
    })
}
