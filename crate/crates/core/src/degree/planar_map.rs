use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Mat2, Point2};

/// An evaluable map `R^2 -> R^2`.
pub trait PlanarMap: Sync {
    fn eval(&self, p: Point2) -> Point2;

    /// `Dw(p)`; central differences unless overridden.
    fn differential(&self, p: Point2) -> Mat2 {
        let h = 1e-6 * (1.0 + p.norm());
        let dx = (self.eval(p + Point2::new(h, 0.0)) - self.eval(p - Point2::new(h, 0.0))) * (0.5 / h);
        let dy = (self.eval(p + Point2::new(0.0, h)) - self.eval(p - Point2::new(0.0, h))) * (0.5 / h);
        [[dx.x, dy.x], [dx.y, dy.y]]
    }
}

impl<F: Fn(Point2) -> Point2 + Sync> PlanarMap for F {
    fn eval(&self, p: Point2) -> Point2 {
        self(p)
    }
}

/// An open disk (or its boundary circle).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "disk needs a positive radius, got {radius}"
            )));
        }
        Ok(Disk { center, radius })
    }

    pub fn unit() -> Self {
        Disk {
            center: Point2::ZERO,
            radius: 1.0,
        }
    }

    /// Boundary point at angle `t`.
    pub fn boundary(&self, t: f64) -> Point2 {
        self.center + Point2::polar(self.radius, t)
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.distance(self.center) < self.radius
    }
}

/// Named planar maps with analytic differentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PlanarCatalog {
    Identity,
    /// `(x + k y, y)`.
    Shear {
        k: f64,
    },
    /// `(x^2 - y^2, 2 x y)`, degree two about the origin.
    ComplexSquare,
    /// `(x + amp sin y, y + amp sin x)`, a diffeomorphism for `|amp| < 1`.
    Wave {
        amp: f64,
    },
    /// `(x, -y)`.
    Reflection,
}

impl PlanarCatalog {
    /// Catalog entries that are injective with positive Jacobian.
    pub const INJECTIVE: [PlanarCatalog; 3] = [
        PlanarCatalog::Identity,
        PlanarCatalog::Shear { k: 0.3 },
        PlanarCatalog::Wave { amp: 0.4 },
    ];
    /// Entries that are smooth, the full list checked against the divergence identities.
    pub const SMOOTH: [PlanarCatalog; 5] = [
        PlanarCatalog::Identity,
        PlanarCatalog::Shear { k: 0.3 },
        PlanarCatalog::ComplexSquare,
        PlanarCatalog::Wave { amp: 0.4 },
        PlanarCatalog::Reflection,
    ];

    pub fn name(&self) -> String {
        match self {
            PlanarCatalog::Identity => "identity".into(),
            PlanarCatalog::Shear { k } => format!("shear:{k}"),
            PlanarCatalog::ComplexSquare => "square".into(),
            PlanarCatalog::Wave { amp } => format!("wave:{amp}"),
            PlanarCatalog::Reflection => "reflection".into(),
        }
    }
}

impl FromStr for PlanarCatalog {
    type Err = Error;

    /// `identity`, `square`, `reflection`, `shear[:k]`, `wave[:amp]`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, param) = match s.split_once(':') {
            Some((t, p)) => (t, Some(p)),
            None => (s, None),
        };
        let num = |default: f64| -> Result<f64> {
            param
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::UnknownCatalog(s.to_string()))
                })
                .unwrap_or(Ok(default))
        };
        Ok(match tag.trim() {
            "identity" => PlanarCatalog::Identity,
            "square" | "complex-square" => PlanarCatalog::ComplexSquare,
            "reflection" => PlanarCatalog::Reflection,
            "shear" => PlanarCatalog::Shear { k: num(0.3)? },
            "wave" => PlanarCatalog::Wave { amp: num(0.4)? },
            _ => return Err(Error::UnknownCatalog(s.to_string())),
        })
    }
}

impl PlanarMap for PlanarCatalog {
    fn eval(&self, p: Point2) -> Point2 {
        let (x, y) = (p.x, p.y);
        match *self {
            PlanarCatalog::Identity => p,
            PlanarCatalog::Shear { k } => Point2::new(x + k * y, y),
            PlanarCatalog::ComplexSquare => Point2::new(x * x - y * y, 2.0 * x * y),
            PlanarCatalog::Wave { amp } => Point2::new(x + amp * y.sin(), y + amp * x.sin()),
            PlanarCatalog::Reflection => Point2::new(x, -y),
        }
    }

    fn differential(&self, p: Point2) -> Mat2 {
        let (x, y) = (p.x, p.y);
        match *self {
            PlanarCatalog::Identity => [[1.0, 0.0], [0.0, 1.0]],
            PlanarCatalog::Shear { k } => [[1.0, k], [0.0, 1.0]],
            PlanarCatalog::ComplexSquare => [[2.0 * x, -2.0 * y], [2.0 * y, 2.0 * x]],
            PlanarCatalog::Wave { amp } => [[1.0, amp * y.cos()], [amp * x.cos(), 1.0]],
            PlanarCatalog::Reflection => [[1.0, 0.0], [0.0, -1.0]],
        }
    }
}
