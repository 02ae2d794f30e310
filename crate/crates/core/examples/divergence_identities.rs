//! Residuals of the divergence identities for the smooth planar catalog.
//!
//! ```bash
//! cargo run --release --example divergence_identities
//! ```

use linkprobe::degree::{divergence_identity_residual, test_catalog, Disk, PlanarCatalog};

fn main() {
    let tests = test_catalog(Disk::unit());
    for w in PlanarCatalog::SMOOTH {
        let worst = tests
            .iter()
            .map(|(phi, g)| divergence_identity_residual(&w, phi, g, 512).abs())
            .fold(0.0, f64::max);
        println!("{:10} max |R| over {} test pairs: {worst:.3e}", w.name(), tests.len());
    }
}
