use std::fmt;
use std::sync::Arc;

use crate::chart::ChartFamily;
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};

use super::profile::AxisymProfile;

/// A user-supplied map with its differential.
pub trait Field3: Send + Sync {
    fn eval(&self, x: Point3) -> Result<Point3>;
    fn differential(&self, x: Point3) -> Result<Mat3>;
}

/// An evaluable map `R^3 -> R^3` from the catalog.
#[derive(Clone)]
pub enum MapField3 {
    Identity,
    Linear(Mat3),
    Axisym(AxisymProfile),
    /// `(|x1|, x2, x3)`: two-to-one, used as an injectivity control.
    Fold,
    /// The chart map `T_r` of a family.
    Chart {
        family: ChartFamily,
        radius: f64,
    },
    /// `base + amplitude * bump(x) * (1, 1, 1)` with
    /// `bump = (1 - |x - center|^2 / radius^2)^3` inside the ball.
    Bumped {
        base: Box<MapField3>,
        amplitude: f64,
        center: Point3,
        radius: f64,
    },
    /// Maps applied left to right.
    Composed(Vec<MapField3>),
    Custom(Arc<dyn Field3>),
}

impl fmt::Debug for MapField3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapField3::Identity => write!(f, "Identity"),
            MapField3::Linear(m) => f.debug_tuple("Linear").field(m).finish(),
            MapField3::Axisym(p) => f.debug_tuple("Axisym").field(p).finish(),
            MapField3::Fold => write!(f, "Fold"),
            MapField3::Chart { family, radius } => f
                .debug_struct("Chart")
                .field("x0", &family.x0)
                .field("radius", radius)
                .finish(),
            MapField3::Bumped {
                base,
                amplitude,
                center,
                radius,
            } => f
                .debug_struct("Bumped")
                .field("base", base)
                .field("amplitude", amplitude)
                .field("center", center)
                .field("radius", radius)
                .finish(),
            MapField3::Composed(list) => f.debug_tuple("Composed").field(list).finish(),
            MapField3::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl MapField3 {
    pub fn eval(&self, x: Point3) -> Result<Point3> {
        match self {
            MapField3::Identity => Ok(x),
            MapField3::Linear(m) => Ok(m.apply(x)),
            MapField3::Axisym(p) => p.eval(x),
            MapField3::Fold => Ok(Point3::new(x.x1.abs(), x.x2, x.x3)),
            MapField3::Chart { family, radius } => family.t_r(*radius, x),
            MapField3::Bumped {
                base,
                amplitude,
                center,
                radius,
            } => {
                let (b, _) = bump(x, *center, *radius);
                Ok(base.eval(x)? + Point3::new(1.0, 1.0, 1.0) * (amplitude * b))
            }
            MapField3::Composed(list) => list.iter().try_fold(x, |p, m| m.eval(p)),
            MapField3::Custom(f) => f.eval(x),
        }
    }

    /// Analytic differential `Du(x)`.
    pub fn differential(&self, x: Point3) -> Result<Mat3> {
        match self {
            MapField3::Identity => Ok(Mat3::IDENTITY),
            MapField3::Linear(m) => Ok(*m),
            MapField3::Axisym(p) => p.differential(x),
            MapField3::Fold => Ok(Mat3::diag(if x.x1 >= 0.0 { 1.0 } else { -1.0 }, 1.0, 1.0)),
            MapField3::Chart { family, radius } => family.dt_r(*radius, x),
            MapField3::Bumped {
                base,
                amplitude,
                center,
                radius,
            } => {
                let (_, g) = bump(x, *center, *radius);
                let g = g * *amplitude;
                let ones = Mat3::from_rows([g.to_array(), g.to_array(), g.to_array()]);
                Ok(base.differential(x)?.add(&ones))
            }
            MapField3::Composed(list) => {
                let mut p = x;
                let mut d = Mat3::IDENTITY;
                for m in list {
                    d = m.differential(p)?.mul(&d);
                    p = m.eval(p)?;
                }
                Ok(d)
            }
            MapField3::Custom(f) => f.differential(x),
        }
    }

    /// `det Du(x)`.
    pub fn jacobian(&self, x: Point3) -> Result<f64> {
        match self {
            MapField3::Axisym(p) => p.jacobian(x),
            _ => Ok(self.differential(x)?.det()),
        }
    }

    /// Central-difference differential with step `h`.
    pub fn fd_differential(&self, x: Point3, h: f64) -> Result<Mat3> {
        let mut cols = [Point3::ZERO; 3];
        for (k, col) in cols.iter_mut().enumerate() {
            let mut e = [0.0; 3];
            e[k] = h;
            let e = Point3::from_array(e);
            *col = (self.eval(x + e)? - self.eval(x - e)?) * (0.5 / h);
        }
        Ok(Mat3::from_cols(cols[0], cols[1], cols[2]))
    }

    pub fn as_axisym(&self) -> Result<&AxisymProfile> {
        match self {
            MapField3::Axisym(p) => Ok(p),
            _ => Err(Error::NotAxisymmetric),
        }
    }

    /// `self` followed by `then`.
    pub fn then(self, then: MapField3) -> MapField3 {
        match self {
            MapField3::Composed(mut list) => {
                list.push(then);
                MapField3::Composed(list)
            }
            other => MapField3::Composed(vec![other, then]),
        }
    }
}

/// `(1 - |x - c|^2 / rho^2)^3` and its gradient, zero outside the ball.
pub fn bump(x: Point3, center: Point3, radius: f64) -> (f64, Point3) {
    let d = x - center;
    let s = 1.0 - d.norm_sq() / (radius * radius);
    if s <= 0.0 {
        return (0.0, Point3::ZERO);
    }
    (s * s * s, d * (-6.0 * s * s / (radius * radius)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::build_family;
    use crate::sobolev::profile::catalog;

    #[test]
    fn analytic_differentials_match_finite_differences() {
        let family = build_family(Point3::new(2.0, 0.5, 0.0)).unwrap();
        let maps = vec![
            MapField3::Identity,
            MapField3::Linear(Mat3::from_rows([[1.0, 2.0, 0.0], [0.0, 1.0, -1.0], [0.5, 0.0, 2.0]])),
            MapField3::Axisym(catalog("twisted").unwrap()),
            MapField3::Fold,
            MapField3::Chart {
                family,
                radius: family.r_prime,
            },
            MapField3::Bumped {
                base: Box::new(MapField3::Identity),
                amplitude: 0.3,
                center: Point3::new(1.0, 0.5, 0.0),
                radius: 1.0,
            },
            MapField3::Chart {
                family,
                radius: family.r_prime,
            }
            .then(MapField3::Axisym(catalog("exponential").unwrap())),
        ];
        for m in &maps {
            for x in [
                Point3::new(0.3, 0.2, 0.1),
                Point3::new(1.2, 0.4, -0.3),
                Point3::new(0.9, -0.6, 0.5),
            ] {
                let a = m.differential(x).unwrap();
                let fd = m.fd_differential(x, 1e-6).unwrap();
                assert!(a.max_abs_diff(&fd) <= 1e-5 * a.norm().max(1e-3), "{m:?} at {x:?}");
            }
        }
    }

    #[test]
    fn fold_is_two_to_one() {
        let f = MapField3::Fold;
        let x = Point3::new(0.4, 0.1, -0.2);
        let y = Point3::new(-0.4, 0.1, -0.2);
        assert_eq!(f.eval(x).unwrap(), f.eval(y).unwrap());
        assert_eq!(f.jacobian(y).unwrap(), -1.0);
    }
}
