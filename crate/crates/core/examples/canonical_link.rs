//! The canonical pair `mu_a`, `nu_b` on the torus links once, by both routes.
//!
//! ```bash
//! cargo run --example canonical_link
//! ```

use linkprobe::geometry::Point3;
use linkprobe::linking::{linking_crossings, linking_gauss, sample_curve};
use linkprobe::torus::{mu_a, nu_b, LinkParamA, LinkParamB};

fn main() -> linkprobe::error::Result<()> {
    let a = LinkParamA::new(0.04, -0.03)?;
    let b = LinkParamB::new(0.96, 0.02)?;
    for n in [32, 128, 512] {
        let mu = sample_curve(|t| mu_a(a, t), n)?;
        let nu = sample_curve(|t| nu_b(b, t), n)?;
        let g = linking_gauss(&mu, &nu);
        let c = linking_crossings(&mu, &nu, Point3::new(0.3, -0.2, 0.93))?;
        println!(
            "n = {n:4}: gauss {} (raw {:.15}), crossings {}",
            g.value, g.raw, c.value
        );
    }
    Ok(())
}
