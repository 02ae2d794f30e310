use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{radial_unit, Point2, Point3, E3};
use crate::quadrature::{anuloid_integral, disk_integral};
use crate::torus::{coarea_jacobian_eta, coarea_jacobian_xi_tilde, PrintedJacobian, CORE_RADIUS};

/// Relative tolerance for the two sides of the coarea identity.
pub const COAREA_TOLERANCE: f64 = 5e-3;
/// Smallest accepted resolution.
pub const MIN_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fibration {
    /// Fibres `mu_a`, horizontal circles.
    Eta,
    /// Fibres `nu_b`, meridian circles.
    XiTilde,
}

impl FromStr for Fibration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta" => Ok(Fibration::Eta),
            "xi" | "xi-tilde" | "xi_tilde" => Ok(Fibration::XiTilde),
            other => Err(Error::Config(format!(
                "unknown fibration `{other}`, expected eta or xi"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    One,
    X1Squared,
}

impl Weight {
    fn eval(self, p: Point3) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::X1Squared => p.x1 * p.x1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoareaRow {
    pub weight: Weight,
    /// `int_A g J dx` with the audited Jacobian.
    pub lhs: f64,
    /// `int int_{fibre} g dH^1 dy`.
    pub rhs: f64,
    pub mismatch: f64,
    /// Closed-form value of both sides.
    pub closed_form: f64,
    pub closed_form_mismatch: f64,
    /// Left side with the alternative closed-form Jacobian.
    pub lhs_printed: f64,
    pub mismatch_printed: f64,
    /// The alternative Jacobian does not balance the identity.
    pub printed_flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoareaReport {
    pub fibration: Fibration,
    pub resolution: usize,
    pub rows: Vec<CoareaRow>,
    pub passed: bool,
}

/// Both sides of the coarea formula for `g = 1` and `g = x1^2`.
pub fn run_coarea_check(fibration: Fibration, resolution: usize) -> Result<CoareaReport> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let n = resolution;
    let rows: Vec<CoareaRow> = [Weight::One, Weight::X1Squared]
        .into_iter()
        .map(|g| {
            let (jac, printed): (fn(Point3) -> Result<f64>, PrintedJacobian) = match fibration {
                Fibration::Eta => (coarea_jacobian_eta, PrintedJacobian::Eta),
                Fibration::XiTilde => (coarea_jacobian_xi_tilde, PrintedJacobian::XiTilde),
            };
            let lhs = anuloid_integral(n, |p| g.eval(p) * jac(p).unwrap_or(f64::NAN));
            let lhs_printed = anuloid_integral(n, |p| g.eval(p) * printed.eval(p));
            let rhs = disk_integral(Point2::ZERO, 1.0, n, |y| fibre_integral(fibration, y, g, n));
            let closed_form = match (fibration, g) {
                (Fibration::Eta, Weight::One) => 4.0 * PI * PI,
                (Fibration::XiTilde, Weight::One) => 4.0 * PI * PI / 3.0,
                (Fibration::Eta, Weight::X1Squared) => 9.5 * PI * PI,
                (Fibration::XiTilde, Weight::X1Squared) => 43.0 / 15.0 * PI * PI,
            };
            let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
            let mismatch_printed = rel(lhs_printed, rhs);
            CoareaRow {
                weight: g,
                lhs,
                rhs,
                mismatch: rel(lhs, rhs),
                closed_form,
                closed_form_mismatch: rel(lhs, closed_form).max(rel(rhs, closed_form)),
                lhs_printed,
                mismatch_printed,
                printed_flagged: mismatch_printed > COAREA_TOLERANCE,
            }
        })
        .collect();
    let passed = rows
        .iter()
        .all(|r| r.mismatch < COAREA_TOLERANCE && r.closed_form_mismatch < COAREA_TOLERANCE);
    Ok(CoareaReport {
        fibration,
        resolution,
        rows,
        passed,
    })
}

/// `int g dH^1` over the fibre above `y`, trapezoidal in the fibre angle.
fn fibre_integral(fibration: Fibration, y: Point2, g: Weight, n: usize) -> f64 {
    let dt = TAU / n as f64;
    let mut sum = 0.0;
    match fibration {
        Fibration::Eta => {
            // horizontal circle of radius 2 + y1 at height y2
            let radius = CORE_RADIUS + y.x;
            for k in 0..n {
                let p = radial_unit(k as f64 * dt) * radius + E3 * y.y;
                sum += g.eval(p);
            }
            sum * radius * dt
        }
        Fibration::XiTilde => {
            // meridian circle of radius |y| in the half-plane at angle arg y
            let s = y.norm();
            let e = radial_unit(y.y.atan2(y.x));
            for k in 0..n {
                let (sp, cp) = (k as f64 * dt).sin_cos();
                let p = e * (CORE_RADIUS + s * cp) + E3 * (s * sp);
                sum += g.eval(p);
            }
            sum * s * dt
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_balances() {
        let rep = run_coarea_check(Fibration::Eta, 64).unwrap();
        assert!(rep.passed);
        let one = &rep.rows[0];
        assert!((one.lhs - 4.0 * PI * PI).abs() < 1e-9);
        assert!(one.printed_flagged);
        // pi int_{B^2} (2 + s1)^3 ds = 9.5 pi^2
        let two = &rep.rows[1];
        assert!((two.rhs - 9.5 * PI * PI).abs() < 1e-9, "{}", two.rhs);
        assert!(two.mismatch < 1e-9, "{}", two.mismatch);
    }

    #[test]
    fn xi_tilde_balances_and_flags_the_square() {
        let rep = run_coarea_check(Fibration::XiTilde, 64).unwrap();
        assert!(rep.passed);
        let one = &rep.rows[0];
        assert!((one.rhs - 4.0 * PI * PI / 3.0).abs() < 1e-9);
        let printed = 4.0 * PI * PI * (16.0 / 3.0 - 3.0 * 3f64.sqrt());
        assert!((one.lhs_printed - printed).abs() < 1e-6, "{}", one.lhs_printed);
        assert!(one.mismatch_printed > 0.4);
        assert!(one.printed_flagged);
    }

    #[test]
    fn low_resolution_is_rejected() {
        assert!(run_coarea_check(Fibration::Eta, 32).is_err());
    }
}
