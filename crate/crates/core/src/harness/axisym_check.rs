use std::f64::consts::PI;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chart::build_family;
use crate::degree::{divergence_identity_residual, test_catalog, Disk, PlanarMap};
use crate::error::{Error, Result};
use crate::geometry::{rotation_for_halfplane, CylPoint3, Point2, Point3};
use crate::rng::substream;
use crate::sobolev::{
    catalog, injectivity_sample, restrict_to_halfplane, AxisymProfile, Ball, HalfPlaneRestriction, MapField3,
};

/// Residual bound for the divergence identities.
pub const DIVERGENCE_TOLERANCE: f64 = 1e-5;
/// Relative bound between the analytic and finite-difference Jacobians.
pub const JACOBIAN_TOLERANCE: f64 = 1e-5;

/// A profile file: either `catalog = "<name>"` or the profile fields themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProfileFile {
    Catalog { catalog: String },
    Profile(AxisymProfile),
}

impl ProfileFile {
    pub fn resolve(&self) -> Result<AxisymProfile> {
        match self {
            ProfileFile::Catalog { catalog: name } => catalog(name),
            ProfileFile::Profile(p) => {
                p.validate()?;
                Ok(p.clone())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisymCheck {
    Jacobian,
    Divergence,
    Injectivity,
    Halfplane,
}

impl AxisymCheck {
    pub const ALL: [AxisymCheck; 4] = [
        AxisymCheck::Jacobian,
        AxisymCheck::Divergence,
        AxisymCheck::Injectivity,
        AxisymCheck::Halfplane,
    ];
}

impl FromStr for AxisymCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "jacobian" => Ok(AxisymCheck::Jacobian),
            "divergence" => Ok(AxisymCheck::Divergence),
            "injectivity" => Ok(AxisymCheck::Injectivity),
            "halfplane" => Ok(AxisymCheck::Halfplane),
            other => Err(Error::Config(format!("unknown check `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: AxisymCheck,
    pub passed: bool,
    /// The quantity compared against the tolerance.
    pub value: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisymCheckReport {
    pub outcomes: Vec<CheckOutcome>,
    pub passed: bool,
}

/// Runs the requested checks on a profile over the anuloid region.
pub fn run_axisym_check(profile: &AxisymProfile, checks: &[AxisymCheck], seed: u64) -> Result<AxisymCheckReport> {
    let outcomes = checks
        .iter()
        .map(|&c| match c {
            AxisymCheck::Jacobian => jacobian_check(profile, seed),
            AxisymCheck::Divergence => divergence_check(profile),
            AxisymCheck::Injectivity => injectivity_check(profile, seed),
            AxisymCheck::Halfplane => halfplane_check(profile),
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(AxisymCheckReport { outcomes, passed })
}

fn jacobian_check(profile: &AxisymProfile, seed: u64) -> Result<CheckOutcome> {
    let u = MapField3::Axisym(profile.clone());
    let mut rng = substream(seed, 0);
    let mut worst: f64 = 0.0;
    let mut min_jac = f64::INFINITY;
    for _ in 0..2000 {
        let x = CylPoint3::new(
            rng.gen_range(1.0..3.0),
            rng.gen_range(-PI..PI),
            rng.gen_range(-1.0..1.0),
        )?
        .to_cartesian();
        let analytic = u.jacobian(x)?;
        let fd = u.fd_differential(x, 1e-6)?.det();
        worst = worst.max((analytic - fd).abs() / analytic.abs().max(1.0));
        min_jac = min_jac.min(analytic);
    }
    Ok(CheckOutcome {
        check: AxisymCheck::Jacobian,
        passed: worst < JACOBIAN_TOLERANCE && min_jac > 0.0,
        value: worst,
        detail: format!("min det Du = {min_jac:.6e}"),
    })
}

fn divergence_check(profile: &AxisymProfile) -> Result<CheckOutcome> {
    let w = restrict_to_halfplane(&MapField3::Axisym(profile.clone()), 0.0, 2.0, 0.0, 1.0)?;
    let worst = test_catalog(Disk::unit())
        .iter()
        .map(|(phi, g)| divergence_identity_residual(&w, phi, g, 512).abs())
        .fold(0.0, f64::max);
    Ok(CheckOutcome {
        check: AxisymCheck::Divergence,
        passed: worst < DIVERGENCE_TOLERANCE,
        value: worst,
        detail: "max |R| over the test catalog, half-plane theta = 0".into(),
    })
}

fn injectivity_check(profile: &AxisymProfile, seed: u64) -> Result<CheckOutcome> {
    let u = MapField3::Axisym(profile.clone());
    let rep = injectivity_sample(
        &u,
        Ball {
            center: Point3::new(2.0, 0.0, 0.0),
            radius: 0.9,
        },
        10_000,
        seed,
    )?;
    Ok(CheckOutcome {
        check: AxisymCheck::Injectivity,
        passed: rep.collisions == 0,
        value: rep.collisions as f64,
        detail: format!("{} pairs, {} skipped", rep.n_pairs, rep.skipped),
    })
}

fn halfplane_check(profile: &AxisymProfile) -> Result<CheckOutcome> {
    let family = build_family(Point3::new(2.0, 0.0, 0.0))?;
    let r = family.r_prime;
    let u = MapField3::Axisym(profile.clone());
    let mut worst: f64 = 0.0;
    for z_level in [-0.5, 0.0, 0.5] {
        let w = HalfPlaneRestriction::for_chart(profile, &family, r, z_level);
        let rot = rotation_for_halfplane(profile.theta.eval(w.theta));
        for i in 0..32 {
            for j in 0..32 {
                let p = Point2::new(-3.0 + 6.0 * i as f64 / 31.0, -3.0 + 6.0 * j as f64 / 31.0);
                let image = rot.apply(u.eval(family.t_r(r, Point3::new(p.x, p.y, z_level))?)?);
                worst = worst.max(image.x3.abs()).max(image.xy().distance(w.eval(p)));
            }
        }
    }
    Ok(CheckOutcome {
        check: AxisymCheck::Halfplane,
        passed: worst < 1e-10,
        value: worst,
        detail: "rotated u o T_r against the planar restriction".into(),
    })
}
