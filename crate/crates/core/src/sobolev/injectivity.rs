use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MapField3;
use crate::chart::uniform_in_ball;
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::rng::substream;

/// Minimum number of pairs per injectivity run.
pub const MIN_PAIRS: usize = 10_000;
const NEWTON_STEPS: usize = 40;

/// A closed ball in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point3,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub n_pairs: usize,
    /// Pairs `(x, x')` with `|x - x'| > 1e-3` and `|m(x) - m(x')| < 1e-9 scale`.
    pub collisions: usize,
    /// Pairs skipped because the map was not evaluable at `x`.
    pub skipped: usize,
    pub first_collision: Option<(Point3, Point3)>,
}

/// Falsification test for injectivity on a ball.
///
/// Each pair draws `x` and a start point uniformly in the ball, then runs
/// Newton on `m(x') = m(x)` from the start point. A partner that converges
/// inside the ball away from `x` is a collision. Zero collisions never
/// certify injectivity.
pub fn injectivity_sample(m: &MapField3, domain: Ball, n_pairs: usize, seed: u64) -> Result<InjectivityReport> {
    if n_pairs < MIN_PAIRS {
        return Err(Error::InvalidParameter(format!(
            "n_pairs must be at least {MIN_PAIRS}, got {n_pairs}"
        )));
    }
    let outcomes: Vec<Outcome> = (0..n_pairs)
        .into_par_iter()
        .map(|i| probe(m, domain, seed, i as u64))
        .collect();
    let mut report = InjectivityReport {
        n_pairs,
        collisions: 0,
        skipped: 0,
        first_collision: None,
    };
    for o in outcomes {
        match o {
            Outcome::Skipped => report.skipped += 1,
            Outcome::Clean => {}
            Outcome::Collision(x, y) => {
                report.collisions += 1;
                report.first_collision.get_or_insert((x, y));
            }
        }
    }
    Ok(report)
}

enum Outcome {
    Skipped,
    Clean,
    Collision(Point3, Point3),
}

fn probe(m: &MapField3, domain: Ball, seed: u64, index: u64) -> Outcome {
    let mut rng = substream(seed, index);
    let x = domain.center + uniform_in_ball(&mut rng, domain.radius);
    let start = domain.center + uniform_in_ball(&mut rng, domain.radius);
    let target = match m.eval(x) {
        Ok(t) => t,
        Err(_) => return Outcome::Skipped,
    };
    let scale = target.norm().max(1.0);
    let mut p = start;
    for _ in 0..NEWTON_STEPS {
        let residual = match m.eval(p) {
            Ok(v) => v - target,
            Err(_) => return Outcome::Clean,
        };
        if residual.norm() < 1e-9 * scale {
            break;
        }
        let step = match m.differential(p).and_then(|d| d.inverse()) {
            Ok(inv) => inv.apply(residual),
            Err(_) => return Outcome::Clean,
        };
        p = p - step;
    }
    let converged = m.eval(p).map(|v| v.distance(target) < 1e-9 * scale).unwrap_or(false);
    if converged && p.distance(domain.center) <= domain.radius && p.distance(x) > 1e-3 {
        Outcome::Collision(x, p)
    } else {
        Outcome::Clean
    }
}
