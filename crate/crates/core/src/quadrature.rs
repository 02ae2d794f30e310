//! Gauss–Legendre rules and the product rules built on them (disks, balls,
//! solid tori). Angular directions use the periodic trapezoid rule, which is
//! spectrally accurate for smooth periodic integrands.

use std::f64::consts::{PI, TAU};

use crate::geometry::{Point2, Point3};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.on_interval(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral over the disk `B(center, radius)` in polar coordinates.
pub fn disk_integral(center: Point2, radius: f64, n: usize, f: impl Fn(Point2) -> f64) -> f64 {
    let gl = GaussLegendre::new(n);
    let dphi = TAU / n as f64;
    let mut total = 0.0;
    for (rho, w) in gl.on_interval(0.0, radius) {
        let mut ring = 0.0;
        for k in 0..n {
            ring += f(center + Point2::polar(rho, k as f64 * dphi));
        }
        total += w * rho * ring * dphi;
    }
    total
}

/// Integral over the ball `B(center, radius)` in spherical coordinates.
pub fn ball_integral(center: Point3, radius: f64, n: usize, f: impl Fn(Point3) -> f64) -> f64 {
    let gl = GaussLegendre::new(n);
    let dphi = TAU / n as f64;
    let mut total = 0.0;
    for (rho, wr) in gl.on_interval(0.0, radius) {
        for (ct, wt) in gl.on_interval(-1.0, 1.0) {
            let st = (1.0 - ct * ct).max(0.0).sqrt();
            let mut ring = 0.0;
            for k in 0..n {
                let (sp, cp) = (k as f64 * dphi).sin_cos();
                ring += f(center + Point3::new(rho * st * cp, rho * st * sp, rho * ct));
            }
            total += wr * wt * rho * rho * ring * dphi;
        }
    }
    total
}

/// Integral over the solid torus `{(sqrt(x1^2+x2^2) - 2)^2 + x3^2 < 1}`.
///
/// Uses toroidal coordinates `x = ((2 + rho cos phi) e_r(theta), rho sin phi)`
/// with volume element `(2 + rho cos phi) rho`.
pub fn anuloid_integral(n: usize, f: impl Fn(Point3) -> f64) -> f64 {
    let gl = GaussLegendre::new(n);
    let dang = TAU / n as f64;
    let mut total = 0.0;
    for (rho, w) in gl.on_interval(0.0, 1.0) {
        let mut shell = 0.0;
        for i in 0..n {
            let (sp, cp) = (i as f64 * dang).sin_cos();
            let r = 2.0 + rho * cp;
            let z = rho * sp;
            let mut ring = 0.0;
            for k in 0..n {
                let (st, ct) = (k as f64 * dang).sin_cos();
                ring += f(Point3::new(r * ct, r * st, z));
            }
            shell += ring * r;
        }
        total += w * rho * shell * dang * dang;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        let gl = GaussLegendre::new(5);
        // degree 9 is integrated exactly by 5 nodes
        let v = gl.integrate(-1.0, 2.0, |x| x.powi(9) - 3.0 * x.powi(4) + 1.0);
        let exact = (2f64.powi(10) - 1.0) / 10.0 - 3.0 * (32.0 + 1.0) / 5.0 + 3.0;
        assert!((v - exact).abs() < 1e-11, "{v} vs {exact}");
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn large_rules_are_accurate() {
        let gl = GaussLegendre::new(512);
        let v = gl.integrate(0.0, PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn volumes() {
        let disk = disk_integral(Point2::new(0.3, -1.0), 2.0, 32, |_| 1.0);
        assert!((disk - 4.0 * PI).abs() < 1e-12);
        let ball = ball_integral(Point3::ZERO, 4.0, 16, |_| 1.0);
        assert!((ball - 256.0 * PI / 3.0).abs() < 1e-10);
        let torus = anuloid_integral(16, |_| 1.0);
        assert!((torus - 4.0 * PI * PI).abs() < 1e-11);
    }
}
