//! Writes two curves in the text format, reads them back and links them.
//!
//! ```bash
//! cargo run --example curve_files
//! ```

use std::f64::consts::TAU;

use linkprobe::geometry::Point3;
use linkprobe::linking::{linking_gauss, sample_curve, ClosedPolyline3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("linkprobe-curves");
    std::fs::create_dir_all(&dir)?;

    // a (2, 3) torus knot and the core circle of its torus
    let knot = sample_curve(
        |t| {
            let (p, q) = (2.0, 3.0);
            let r = 2.0 + 0.5 * (q * t).cos();
            Point3::new(r * (p * t).cos(), r * (p * t).sin(), 0.5 * (q * t).sin())
        },
        600,
    )?;
    let core = sample_curve(|t| Point3::new(2.0 * t.cos(), 2.0 * t.sin(), 0.0), 200)?;
    let axis = sample_curve(|t| Point3::new(0.0, 10.0 * t.sin(), 10.0 * (t + TAU / 8.0).cos()), 200)?;

    for (name, c) in [("knot", &knot), ("core", &core), ("axis", &axis)] {
        c.write(dir.join(format!("{name}.txt")))?;
    }
    let knot = ClosedPolyline3::read(dir.join("knot.txt"))?;
    let core = ClosedPolyline3::read(dir.join("core.txt"))?;
    let axis = ClosedPolyline3::read(dir.join("axis.txt"))?;
    println!("wrote curves to {}", dir.display());
    println!("lk(knot, core) = {}", linking_gauss(&knot, &core).value);
    println!("lk(knot, axis) = {}", linking_gauss(&knot, &axis).value);
    println!("lk(core, axis) = {}", linking_gauss(&core, &axis).value);
    Ok(())
}
