use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Density, GoodSetConfig};
use crate::error::Result;
use crate::geometry::Point3;
use crate::quadrature::ball_integral;
use crate::rng::substream;
use crate::torus::{mu_a, LinkParamA, PARAM_RADIUS};

/// Bound on `J_eta` over `eta^{-1}(E)`; the audited Jacobian is identically one.
pub const J_ETA_BOUND: f64 = 1.0;

/// `int (1 - |x|^2)^3` over the unit ball.
const BUMP_MASS: f64 = 64.0 * PI / 315.0;

impl Density {
    /// Builds the evaluable density for a given `delta`.
    fn resolve(&self, delta: f64) -> ResolvedDensity {
        let ball = 4.0 * PI * 64.0 / 3.0;
        match *self {
            Density::Zero => ResolvedDensity::Constant(0.0),
            Density::Constant { mass_fraction } => ResolvedDensity::Constant(mass_fraction * delta.powi(3) / ball),
            Density::Bump {
                center,
                radius,
                mass_fraction,
            } => ResolvedDensity::Bump {
                center: Point3::from_array(center),
                radius,
                height: mass_fraction * delta.powi(3) / (BUMP_MASS * radius.powi(3)),
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum ResolvedDensity {
    Constant(f64),
    Bump { center: Point3, radius: f64, height: f64 },
}

impl ResolvedDensity {
    fn eval(&self, x: Point3) -> f64 {
        match *self {
            ResolvedDensity::Constant(c) => {
                if x.norm() < 4.0 {
                    c
                } else {
                    0.0
                }
            }
            ResolvedDensity::Bump { center, radius, height } => {
                let s = 1.0 - x.distance(center).powi(2) / (radius * radius);
                if s > 0.0 {
                    height * s * s * s
                } else {
                    0.0
                }
            }
        }
    }

    /// `int_{B_4(0)} f` by quadrature over the support.
    fn integral(&self, quad_n: usize) -> f64 {
        match *self {
            ResolvedDensity::Constant(_) => ball_integral(Point3::ZERO, 4.0, quad_n, |x| self.eval(x)),
            ResolvedDensity::Bump { center, radius, .. } => ball_integral(center, radius, quad_n, |x| self.eval(x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoodSetStatus {
    Pass,
    Fail,
    /// `int f >= delta^3` or `delta` above the admissible threshold; nothing asserted.
    HypothesisViolated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodSetReport {
    pub integral: f64,
    pub delta_cubed: f64,
    pub hypothesis_holds: bool,
    /// `2 m alpha L^2(E) / M`.
    pub delta_threshold: f64,
    pub delta_admissible: bool,
    pub n_fibers: usize,
    pub good_fibers: usize,
    pub fraction: f64,
    pub required: f64,
    /// Largest distance of a bad fiber parameter from the centroid of the bad ones.
    pub bad_spread: Option<f64>,
    pub max_level_length: f64,
    pub status: GoodSetStatus,
}

/// Estimates `L^2(I) / L^2(E)` for `E = B^2_{1/10}(0)` by sampling fibres `mu_a`.
pub fn run_good_set(cfg: &GoodSetConfig) -> Result<GoodSetReport> {
    cfg.validate()?;
    let f = cfg.f.resolve(cfg.delta);
    let integral = f.integral(cfg.quad_n);
    let delta_cubed = cfg.delta.powi(3);
    let hypothesis_holds = integral < delta_cubed;
    let area_e = PI * PARAM_RADIUS * PARAM_RADIUS;
    let delta_threshold = 2.0 * cfg.m * cfg.alpha * area_e / J_ETA_BOUND;
    let delta_admissible = cfg.delta < delta_threshold;

    let level = cfg.m * cfg.delta;
    let n = cfg.n_per_fiber;
    let fibers: Vec<(LinkParamA, f64)> = (0..cfg.n_fibers)
        .into_par_iter()
        .map(|i| {
            let a = LinkParamA::sample(&mut substream(cfg.seed, i as u64));
            let hits = (0..n)
                .filter(|&k| f.eval(mu_a(a, TAU * k as f64 / n as f64)) >= level)
                .count();
            let length = hits as f64 / n as f64 * TAU * (2.0 + a.get().x);
            (a, length)
        })
        .collect();

    let bad: Vec<LinkParamA> = fibers
        .iter()
        .filter(|(_, l)| *l >= 2.0 * cfg.delta)
        .map(|(a, _)| *a)
        .collect();
    let good_fibers = fibers.len() - bad.len();
    let fraction = good_fibers as f64 / fibers.len() as f64;
    let required = 1.0 - cfg.alpha;
    let bad_spread = (!bad.is_empty()).then(|| {
        let c = bad
            .iter()
            .fold((0.0, 0.0), |acc, a| (acc.0 + a.get().x, acc.1 + a.get().y));
        let c = (c.0 / bad.len() as f64, c.1 / bad.len() as f64);
        bad.iter()
            .map(|a| (a.get().x - c.0).hypot(a.get().y - c.1))
            .fold(0.0, f64::max)
    });
    let max_level_length = fibers.iter().map(|f| f.1).fold(0.0, f64::max);

    let status = if !(hypothesis_holds && delta_admissible) {
        GoodSetStatus::HypothesisViolated
    } else if fraction > required {
        GoodSetStatus::Pass
    } else {
        GoodSetStatus::Fail
    };
    Ok(GoodSetReport {
        integral,
        delta_cubed,
        hypothesis_holds,
        delta_threshold,
        delta_admissible,
        n_fibers: fibers.len(),
        good_fibers,
        fraction,
        required,
        bad_spread,
        max_level_length,
        status,
    })
}

/// The three densities of the standard catalog: zero, a constant carrying half
/// the admissible mass, and a thin bump on the fibre over `a = (0.02, 0.01)`.
pub fn density_catalog() -> [Density; 3] {
    [
        Density::Zero,
        Density::Constant { mass_fraction: 0.5 },
        Density::Bump {
            center: [2.02, 0.0, 0.01],
            radius: 0.02,
            mass_fraction: 0.5,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(f: Density, alpha: f64) -> GoodSetConfig {
        let mut c = GoodSetConfig::new(f, 0.01, alpha);
        c.n_fibers = 400;
        c.n_per_fiber = 2048;
        c.seed = 5;
        c
    }

    #[test]
    fn zero_density_is_all_good() {
        let rep = run_good_set(&cfg(Density::Zero, 0.5)).unwrap();
        assert_eq!(rep.fraction, 1.0);
        assert_eq!(rep.status, GoodSetStatus::Pass);
    }

    #[test]
    fn constant_density_mass_by_quadrature() {
        let rep = run_good_set(&cfg(Density::Constant { mass_fraction: 0.5 }, 0.25)).unwrap();
        assert!((rep.integral / rep.delta_cubed - 0.5).abs() < 1e-10);
        assert_eq!(rep.fraction, 1.0);
    }

    #[test]
    fn thin_bump_has_localised_bad_fibres() {
        let mut c = cfg(density_catalog()[2].clone(), 0.25);
        c.n_fibers = 4000;
        c.n_per_fiber = 4096;
        let rep = run_good_set(&c).unwrap();
        assert!((rep.integral / rep.delta_cubed - 0.5).abs() < 1e-6, "{}", rep.integral);
        assert_eq!(rep.status, GoodSetStatus::Pass);
        assert!(rep.max_level_length >= 0.02, "{rep:?}");
        assert!(rep.bad_spread.unwrap() < 0.02);
    }

    #[test]
    fn heavy_density_violates_the_hypothesis() {
        let rep = run_good_set(&cfg(Density::Constant { mass_fraction: 2.0 }, 0.5)).unwrap();
        assert_eq!(rep.status, GoodSetStatus::HypothesisViolated);
        let mut c = cfg(Density::Zero, 0.25);
        c.delta = 0.05;
        assert!(!run_good_set(&c).unwrap().delta_admissible);
    }
}
