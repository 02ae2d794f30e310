//! Winding number against preimage counting for the planar catalog.
//!
//! ```bash
//! cargo run --example planar_degree
//! ```

use linkprobe::degree::{find_preimages, winding_number, Disk, PlanarCatalog};
use linkprobe::geometry::Point2;

fn main() -> linkprobe::error::Result<()> {
    let disk = Disk::new(Point2::new(0.1, -0.1), 0.9)?;
    let targets = [Point2::new(0.2, 0.1), Point2::new(-0.4, 0.3), Point2::new(1.5, 1.5)];
    for w in PlanarCatalog::SMOOTH {
        for y in targets {
            let wind = winding_number(&w, disk, y, 256)?;
            let pre = find_preimages(&w, disk, y, 64)?;
            println!(
                "{:10} y = ({:5.2}, {:5.2}): winding {:2}, roots {} (clearance {:.3})",
                w.name(),
                y.x,
                y.y,
                wind.value,
                pre.roots.len(),
                wind.boundary_clearance
            );
        }
    }
    Ok(())
}
