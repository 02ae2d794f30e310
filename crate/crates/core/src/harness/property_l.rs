use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Method, PropertyLConfig};
use crate::chart::{build_family, ChartFamily};
use crate::degree::{linking_from_planar_map, linking_via_planar_degree};
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::linking::{linking_gauss, sample_curve, ClosedPolyline3, LinkResult, ROUNDING_TOLERANCE};
use crate::rng::substream;
use crate::sobolev::{HalfPlaneRestriction, MapField3};
use crate::torus::{mu_a, nu_b, planar_slice, LinkParamA, LinkParamB};

/// Largest polyline resolution reached by automatic doubling.
pub const MAX_N_CURVE: usize = 4096;

/// The statistic that stands in for the positive-measure condition.
pub const SURROGATE: &str =
    "zero defined negative linking values among the sampled (a, b); positive-measure sets themselves are not checked";

/// One `(a, b)` sample of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub defined: bool,
    pub value: Option<i64>,
    pub gauss: Option<i64>,
    pub planar: Option<i64>,
    /// Both routes defined and equal; absent unless both ran and were defined.
    pub method_agree: Option<bool>,
    /// Resolution the Gauss route settled on.
    pub n_curve: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Sweep totals; `negative + nonnegative = defined`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub map: String,
    pub orientation_preserving: bool,
    pub x0: [f64; 3],
    pub radius: f64,
    pub seed: u64,
    pub method: Method,
    pub samples: usize,
    pub defined: usize,
    pub undefined: usize,
    pub negative: usize,
    pub nonnegative: usize,
    pub ones: usize,
    pub minus_ones: usize,
    pub disagreements: usize,
    pub surrogate: String,
    pub zero_negatives: bool,
}

impl Aggregate {
    pub fn undefined_fraction(&self) -> f64 {
        self.undefined as f64 / self.samples.max(1) as f64
    }

    pub fn minus_one_fraction(&self) -> f64 {
        self.minus_ones as f64 / self.defined.max(1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkProbeReport {
    pub records: Vec<SampleRecord>,
    pub aggregate: Aggregate,
}

/// Samples `a` and `b`, forms `v = u o T_r` and computes the linking numbers of
/// `(v o mu_a, v o nu_b)` over the full `n_a x n_b` grid of pairs.
pub fn run_property_l(cfg: &PropertyLConfig) -> Result<LinkProbeReport> {
    cfg.validate()?;
    let u = cfg.map.build()?;
    let family = build_family(cfg.base_point()?.to_cartesian())?;
    let radius = cfg.radius.unwrap_or(family.r_prime);
    if radius > family.r_prime * (1.0 + 1e-12) {
        return Err(Error::Config(format!(
            "radius {radius} exceeds R' = {}",
            family.r_prime
        )));
    }

    let a_list: Vec<LinkParamA> = (0..cfg.n_a)
        .map(|i| LinkParamA::sample(&mut substream(cfg.seed, 2 * i as u64)))
        .collect();
    let b_list: Vec<LinkParamB> = (0..cfg.n_b)
        .map(|k| LinkParamB::sample(&mut substream(cfg.seed, 2 * k as u64 + 1)))
        .collect();

    let probe = Probe {
        u: &u,
        family: &family,
        radius,
        n_curve: cfg.n_curve,
    };
    let run_gauss = cfg.method != Method::PlanarDegreeOnly;
    let run_planar = cfg.method != Method::GaussOnly;

    let (mu_images, nu_images) = if run_gauss {
        let mu: Vec<_> = a_list.par_iter().map(|&a| probe.mu_image(a, cfg.n_curve)).collect();
        let nu: Vec<_> = b_list.par_iter().map(|&b| probe.nu_image(b, cfg.n_curve)).collect();
        (mu, nu)
    } else {
        (Vec::new(), Vec::new())
    };

    let records: Vec<SampleRecord> = (0..cfg.n_a * cfg.n_b)
        .into_par_iter()
        .map(|index| {
            let (i, k) = (index / cfg.n_b, index % cfg.n_b);
            let (a, b) = (a_list[i], b_list[k]);
            let mut notes = Vec::new();
            let (gauss, n_used) = if run_gauss {
                match probe.gauss(a, b, &mu_images[i], &nu_images[k]) {
                    Ok((link, n)) => (link.defined.then_some(link.value), n),
                    Err(e) => {
                        notes.push(format!("gauss: {e}"));
                        (None, cfg.n_curve)
                    }
                }
            } else {
                (None, 0)
            };
            let planar = if run_planar {
                match probe.planar(a, b) {
                    Ok(link) => link.defined.then_some(link.value),
                    Err(e) => {
                        notes.push(format!("planar: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            let (defined, value, method_agree) = match cfg.method {
                Method::Both => match (gauss, planar) {
                    (Some(g), Some(p)) => (true, Some(g), Some(g == p)),
                    _ => (false, None, None),
                },
                Method::GaussOnly => (gauss.is_some(), gauss, None),
                Method::PlanarDegreeOnly => (planar.is_some(), planar, None),
            };
            SampleRecord {
                index,
                a: [a.get().x, a.get().y],
                b: [b.get().x, b.get().y],
                defined,
                value,
                gauss,
                planar,
                method_agree,
                n_curve: n_used,
                note: (!notes.is_empty()).then(|| notes.join("; ")),
            }
        })
        .collect();

    let aggregate = aggregate(cfg, radius, &records)?;
    Ok(LinkProbeReport { records, aggregate })
}

fn aggregate(cfg: &PropertyLConfig, radius: f64, records: &[SampleRecord]) -> Result<Aggregate> {
    let defined = records.iter().filter(|r| r.defined).count();
    let count = |pred: fn(i64) -> bool| records.iter().filter(|r| r.value.is_some_and(pred)).count();
    let negative = count(|v| v < 0);
    Ok(Aggregate {
        map: cfg.map.label(),
        orientation_preserving: cfg.map.orientation_preserving()?,
        x0: cfg.x0,
        radius,
        seed: cfg.seed,
        method: cfg.method,
        samples: records.len(),
        defined,
        undefined: records.len() - defined,
        negative,
        nonnegative: count(|v| v >= 0),
        ones: count(|v| v == 1),
        minus_ones: count(|v| v == -1),
        disagreements: records.iter().filter(|r| r.method_agree == Some(false)).count(),
        surrogate: SURROGATE.to_string(),
        zero_negatives: negative == 0,
    })
}

struct Probe<'a> {
    u: &'a MapField3,
    family: &'a ChartFamily,
    radius: f64,
    n_curve: usize,
}

impl Probe<'_> {
    fn v(&self, z: Point3) -> Result<Point3> {
        self.u.eval(self.family.t_r(self.radius, z)?)
    }

    fn mu_image(&self, a: LinkParamA, n: usize) -> Result<ClosedPolyline3> {
        sample_curve(|t| mu_a(a, t), n)?.map(|p| self.v(p))
    }

    fn nu_image(&self, b: LinkParamB, n: usize) -> Result<ClosedPolyline3> {
        sample_curve(|t| nu_b(b, t), n)?.map(|p| self.v(p))
    }

    /// Gauss linking at `n_curve`, doubled while the raw value is far from an integer.
    fn gauss(
        &self,
        a: LinkParamA,
        b: LinkParamB,
        mu: &Result<ClosedPolyline3>,
        nu: &Result<ClosedPolyline3>,
    ) -> Result<(LinkResult, usize)> {
        let (mu, nu) = (mu.as_ref().map_err(Clone::clone)?, nu.as_ref().map_err(Clone::clone)?);
        let mut n = self.n_curve;
        let mut link = linking_gauss(mu, nu);
        while !link.defined && (link.raw - link.raw.round()).abs() >= ROUNDING_TOLERANCE && 2 * n <= MAX_N_CURVE {
            n *= 2;
            link = linking_gauss(&self.mu_image(a, n)?, &self.nu_image(b, n)?);
        }
        Ok((link, n))
    }

    /// Planar-degree route: the half-plane restriction for axisymmetric maps,
    /// otherwise a fitted image plane.
    fn planar(&self, a: LinkParamA, b: LinkParamB) -> Result<LinkResult> {
        match self.u {
            MapField3::Axisym(profile) => {
                let slice = planar_slice(a, b)?;
                let w = HalfPlaneRestriction::for_chart(profile, self.family, self.radius, slice.z_level);
                Ok(linking_from_planar_map(&w, &slice, self.n_curve)?.link)
            }
            _ => Ok(linking_via_planar_degree(&|p| self.v(p), a, b, self.n_curve)?.link),
        }
    }
}
