//! A linear map plus a small perturbation links the canonical pair with the
//! sign of its determinant.
//!
//! ```bash
//! cargo run --example near_isometry
//! ```

use linkprobe::geometry::{Mat3, Point3};
use linkprobe::linking::{near_isometry_experiment, smallest_singular_value};
use linkprobe::torus::{LinkParamA, LinkParamB};

fn main() -> linkprobe::error::Result<()> {
    let (a, b) = (LinkParamA::new(0.0, 0.05)?, LinkParamB::new(0.97, -0.02)?);
    let maps = [
        ("stretch", Mat3::diag(3.0, 0.5, 1.2)),
        (
            "shear",
            Mat3::from_rows([[1.0, 2.0, 0.0], [0.0, 1.0, 0.5], [0.0, 0.0, 1.0]]),
        ),
        (
            "mirror",
            Mat3::from_rows([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
        ),
    ];
    for (name, m) in maps {
        let m_star = smallest_singular_value(&m)?;
        let eps = m_star / 20.0;
        let wobble = |z: Point3| Point3::new((5.0 * z.x2).sin(), (7.0 * z.x3).sin(), (3.0 * z.x1).sin()) * (eps / 2.0);
        let rep = near_isometry_experiment(&m, wobble, a, b, 256)?;
        println!(
            "{name:8} det sign {:+}, m* {m_star:.4}, sup |p| {:.4}, linking {}",
            rep.det_sign, rep.perturbation_sup, rep.link.value
        );
    }
    Ok(())
}
