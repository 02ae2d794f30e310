//! Builds the chart family at a few base points and prints the radius ladder checks.
//!
//! ```bash
//! cargo run --release --example chart_family
//! ```

use linkprobe::chart::{build_family, verify_family, RADIUS_LADDER};
use linkprobe::geometry::CylPoint3;

fn main() -> linkprobe::error::Result<()> {
    for (r, theta, z) in [(2.0, 0.0, 0.0), (0.5, 1.0, 0.3), (3.5, -2.0, -0.8)] {
        let f = build_family(CylPoint3::new(r, theta, z)?.to_cartesian())?;
        println!(
            "x0 = (r {r}, theta {theta}, z {z}): alpha {:.4}, R {:.4}, R' {:.4}, c {:.3}",
            f.alpha, f.big_r, f.r_prime, f.c
        );
        let rep = verify_family(&f, 500, RADIUS_LADDER, 1);
        for row in rep.rows.iter().step_by(3) {
            println!(
                "  r {:.3e}: containment {:.3}, det ratio {:.3}, deviation {:.3e}",
                row.radius, row.containment_ratio, row.min_det_ratio, row.sup_deviation
            );
        }
        println!(
            "  |A| {:.4}, decreasing {}, all pass {}",
            rep.a_norm, rep.decreasing, rep.all_pass
        );
    }
    Ok(())
}
