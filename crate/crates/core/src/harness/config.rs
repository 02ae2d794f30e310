use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CylPoint3, Mat3};
use crate::sobolev::{catalog, catalog_orientation_preserving, AxisymProfile, MapField3};

/// Which linking routes a sweep runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Both,
    GaussOnly,
    PlanarDegreeOnly,
}

/// A map named by a short tag or given as an axisymmetric profile table.
///
/// Tags: `identity`, `fold`, `axisym:<catalog name>`, `diag:d1,d2,d3` and
/// `linear:m11,m12,...,m33` (row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Tag(String),
    Profile { profile: AxisymProfile },
}

impl MapSpec {
    pub fn build(&self) -> Result<MapField3> {
        match self {
            MapSpec::Profile { profile } => {
                profile.validate()?;
                Ok(MapField3::Axisym(profile.clone()))
            }
            MapSpec::Tag(tag) => parse_map_tag(tag),
        }
    }

    /// Orientation-preserving and injective, as far as the catalog records it.
    pub fn orientation_preserving(&self) -> Result<bool> {
        Ok(match self.build()? {
            MapField3::Identity => true,
            MapField3::Fold => false,
            MapField3::Linear(m) => m.det() > 0.0,
            MapField3::Axisym(_) => match self {
                MapSpec::Tag(tag) => catalog_orientation_preserving(tag.trim_start_matches("axisym:").trim()),
                MapSpec::Profile { .. } => true,
            },
            _ => false,
        })
    }

    pub fn label(&self) -> String {
        match self {
            MapSpec::Tag(tag) => tag.clone(),
            MapSpec::Profile { .. } => "profile".into(),
        }
    }
}

pub fn parse_map_tag(tag: &str) -> Result<MapField3> {
    let (head, rest) = match tag.split_once(':') {
        Some((h, r)) => (h.trim(), Some(r.trim())),
        None => (tag.trim(), None),
    };
    let numbers = |expected: usize| -> Result<Vec<f64>> {
        let list = rest.ok_or_else(|| Error::Config(format!("map `{tag}` needs {expected} numbers")))?;
        let v = parse_list(list)?;
        if v.len() != expected {
            return Err(Error::Config(format!(
                "map `{tag}` needs {expected} numbers, got {}",
                v.len()
            )));
        }
        Ok(v)
    };
    match head {
        "identity" => Ok(MapField3::Identity),
        "fold" => Ok(MapField3::Fold),
        "axisym" => {
            let name = rest.ok_or_else(|| Error::Config("`axisym:` needs a catalog name".into()))?;
            Ok(MapField3::Axisym(catalog(name)?))
        }
        "diag" => {
            let v = numbers(3)?;
            Ok(MapField3::Linear(Mat3::diag(v[0], v[1], v[2])))
        }
        "linear" => {
            let v = numbers(9)?;
            Ok(MapField3::Linear(Mat3::from_rows([
                [v[0], v[1], v[2]],
                [v[3], v[4], v[5]],
                [v[6], v[7], v[8]],
            ])))
        }
        _ => Err(Error::UnknownCatalog(tag.to_string())),
    }
}

/// Comma-separated floats.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("`{t}` is not a number")))
        })
        .collect()
}

fn default_x0() -> [f64; 3] {
    [2.0, 0.0, 0.0]
}

fn default_samples() -> usize {
    100
}

fn default_n_curve() -> usize {
    512
}

/// Property-(L) sweep configuration.
///
/// ```toml
/// map = "axisym:shear"      # or a [map.profile] table
/// x0 = [2.0, 0.0, 0.0]      # cylindrical (r, theta, z)
/// radius = 0.01             # optional, defaults to R'
/// n_a = 100
/// n_b = 100
/// n_curve = 512
/// seed = 7
/// method = "both"           # both | gauss-only | planar-degree-only
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyLConfig {
    pub map: MapSpec,
    #[serde(default = "default_x0")]
    pub x0: [f64; 3],
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default = "default_samples")]
    pub n_a: usize,
    #[serde(default = "default_samples")]
    pub n_b: usize,
    #[serde(default = "default_n_curve")]
    pub n_curve: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub method: Method,
}

impl PropertyLConfig {
    pub fn new(map: MapSpec) -> Self {
        PropertyLConfig {
            map,
            x0: default_x0(),
            radius: None,
            n_a: default_samples(),
            n_b: default_samples(),
            n_curve: default_n_curve(),
            seed: 0,
            method: Method::Both,
        }
    }

    pub fn base_point(&self) -> Result<CylPoint3> {
        let [r, theta, z] = self.x0;
        if !(r > 0.0) {
            return Err(Error::Config(format!("x0 must be off the axis, got r = {r}")));
        }
        CylPoint3::new(r, theta, z)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_a == 0 || self.n_b == 0 {
            return Err(Error::Config("n_a and n_b must be at least 1".into()));
        }
        if !(16..=4096).contains(&self.n_curve) {
            return Err(Error::Config(format!(
                "n_curve must lie in 16..=4096, got {}",
                self.n_curve
            )));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0) {
                return Err(Error::Config(format!("radius must be positive, got {r}")));
            }
        }
        self.base_point()?;
        self.map.build()?;
        Ok(())
    }
}

/// Density `f` on `B_4(0)` for the good-set statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Density {
    Zero,
    /// Constant with total mass `mass_fraction * delta^3`.
    Constant {
        mass_fraction: f64,
    },
    /// `h (1 - |x - c|^2 / rho^2)^3` with total mass `mass_fraction * delta^3`.
    Bump {
        center: [f64; 3],
        radius: f64,
        mass_fraction: f64,
    },
}

fn default_m() -> f64 {
    1.0
}

fn default_fibers() -> usize {
    2000
}

fn default_per_fiber() -> usize {
    4096
}

fn default_quad() -> usize {
    64
}

/// Good-set configuration.
///
/// ```toml
/// m = 1.0
/// delta = 0.01
/// alpha = 0.25
/// n_fibers = 2000
/// n_per_fiber = 4096
/// seed = 3
///
/// [f]
/// kind = "bump"            # zero | constant | bump
/// center = [2.02, 0.0, 0.01]
/// radius = 0.015
/// mass_fraction = 0.5
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodSetConfig {
    pub f: Density,
    #[serde(default = "default_m")]
    pub m: f64,
    pub delta: f64,
    pub alpha: f64,
    #[serde(default = "default_fibers")]
    pub n_fibers: usize,
    #[serde(default = "default_per_fiber")]
    pub n_per_fiber: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_quad")]
    pub quad_n: usize,
}

impl GoodSetConfig {
    pub fn new(f: Density, delta: f64, alpha: f64) -> Self {
        GoodSetConfig {
            f,
            m: default_m(),
            delta,
            alpha,
            n_fibers: default_fibers(),
            n_per_fiber: default_per_fiber(),
            seed: 0,
            quad_n: default_quad(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("m", self.m), ("delta", self.delta), ("alpha", self.alpha)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.alpha >= 1.0 {
            return Err(Error::Config(format!("alpha must be below 1, got {}", self.alpha)));
        }
        if self.n_fibers == 0 || self.n_per_fiber < 16 {
            return Err(Error::Config(
                "n_fibers must be positive and n_per_fiber at least 16".into(),
            ));
        }
        if self.quad_n < 16 {
            return Err(Error::Config(format!(
                "quad_n must be at least 16, got {}",
                self.quad_n
            )));
        }
        match self.f {
            Density::Zero => {}
            Density::Constant { mass_fraction } => {
                if !(mass_fraction >= 0.0) {
                    return Err(Error::Config("mass_fraction must be non-negative".into()));
                }
            }
            Density::Bump {
                center,
                radius,
                mass_fraction,
            } => {
                if !(radius > 0.0 && mass_fraction >= 0.0) {
                    return Err(Error::Config(
                        "bump radius must be positive and mass_fraction non-negative".into(),
                    ));
                }
                let c = (center[0] * center[0] + center[1] * center[1] + center[2] * center[2]).sqrt();
                if c + radius > 4.0 {
                    return Err(Error::Config("bump support must lie inside B_4(0)".into()));
                }
            }
        }
        Ok(())
    }
}

/// Reads and parses a TOML file; every failure is a configuration error.
pub fn load_toml<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}
