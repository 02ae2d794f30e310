use serde::{Deserialize, Serialize};

use super::{Disk, PlanarMap};
use crate::geometry::{mat2_apply, mat2_cof, mat2_det, Point2};
use crate::quadrature::disk_integral;

/// Radius of the wide bump multiplying the polynomial test fields.
pub const FIELD_WIDTH: f64 = 25.0;

/// `phi(x) = (1 - |x - c|^2 / rho^2)^3`, zero outside the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpFunction {
    pub support: Disk,
}

impl BumpFunction {
    pub fn value_grad(&self, x: Point2) -> (f64, Point2) {
        let d = x - self.support.center;
        let rho2 = self.support.radius * self.support.radius;
        let s = 1.0 - d.dot(d) / rho2;
        if s <= 0.0 {
            return (0.0, Point2::ZERO);
        }
        (s * s * s, d * (-6.0 * s * s / rho2))
    }
}

/// A cubic polynomial in `(y1, y2)`; coefficient `k` multiplies `y1^i y2^j`
/// for the `k`-th pair of [`MONOMIALS`].
pub type Cubic = [f64; 10];

pub const MONOMIALS: [(i32, i32); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

fn cubic_value_grad(c: &Cubic, y: Point2) -> (f64, Point2) {
    let pow = |b: f64, e: i32| if e <= 0 { 1.0 } else { b.powi(e) };
    let mut v = 0.0;
    let mut g = Point2::ZERO;
    for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
        v += c[k] * pow(y.x, i) * pow(y.y, j);
        if i > 0 {
            g.x += c[k] * i as f64 * pow(y.x, i - 1) * pow(y.y, j);
        }
        if j > 0 {
            g.y += c[k] * j as f64 * pow(y.x, i) * pow(y.y, j - 1);
        }
    }
    (v, g)
}

/// `g(y) = (P(y), Q(y)) beta(y)` with `beta = (1 - |y|^2 / W^2)^3` and cubic `P, Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestField {
    pub p: Cubic,
    pub q: Cubic,
}

impl TestField {
    /// `(g(y), div g(y))`.
    pub fn value_div(&self, y: Point2) -> (Point2, f64) {
        let bump = BumpFunction {
            support: Disk {
                center: Point2::ZERO,
                radius: FIELD_WIDTH,
            },
        };
        let (beta, dbeta) = bump.value_grad(y);
        let (p, dp) = cubic_value_grad(&self.p, y);
        let (q, dq) = cubic_value_grad(&self.q, y);
        let g = Point2::new(p * beta, q * beta);
        let div = beta * (dp.x + dq.y) + p * dbeta.x + q * dbeta.y;
        (g, div)
    }
}

/// Three bumps inside `domain` crossed with three polynomial fields.
pub fn test_catalog(domain: Disk) -> Vec<(BumpFunction, TestField)> {
    let (c, r) = (domain.center, domain.radius);
    let bumps = [
        BumpFunction {
            support: Disk {
                center: c,
                radius: 0.8 * r,
            },
        },
        BumpFunction {
            support: Disk {
                center: c + Point2::new(0.3 * r, 0.2 * r),
                radius: 0.5 * r,
            },
        },
        BumpFunction {
            support: Disk {
                center: c + Point2::new(-0.35 * r, -0.1 * r),
                radius: 0.4 * r,
            },
        },
    ];
    let fields = [
        TestField {
            p: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            q: [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        },
        TestField {
            p: [0.2, 1.0, -0.5, 0.3, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0],
            q: [-0.1, 0.4, 1.0, 0.0, 0.7, -0.2, 0.0, 0.0, 0.0, 0.0],
        },
        TestField {
            p: [0.0, 0.0, 0.3, 0.0, 0.0, 0.0, 0.5, -0.2, 0.1, 0.3],
            q: [0.5, -0.3, 0.0, 0.2, 0.0, 0.0, -0.1, 0.4, 0.0, 0.25],
        },
    ];
    let mut out = Vec::with_capacity(9);
    for b in bumps {
        for g in fields {
            out.push((b, g));
        }
    }
    out
}

/// `int (div g)(w) phi det Dw + g(w) . (cof Dw) grad phi`, over the support of `phi`.
pub fn divergence_identity_residual(
    w: &(impl PlanarMap + ?Sized),
    phi: &BumpFunction,
    g: &TestField,
    quad_n: usize,
) -> f64 {
    disk_integral(phi.support.center, phi.support.radius, quad_n, |x| {
        let (ph, dph) = phi.value_grad(x);
        if ph == 0.0 && dph == Point2::ZERO {
            return 0.0;
        }
        let d = w.differential(x);
        let (gv, div) = g.value_div(w.eval(x));
        div * ph * mat2_det(&d) + gv.dot(mat2_apply(&mat2_cof(&d), dph))
    })
}
