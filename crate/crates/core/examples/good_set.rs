//! Good-fibre fractions for the density catalog at two thresholds.
//!
//! ```bash
//! cargo run --release --example good_set
//! ```

use linkprobe::harness::{density_catalog, run_good_set, GoodSetConfig};

fn main() -> linkprobe::error::Result<()> {
    for alpha in [0.5, 0.25] {
        for f in density_catalog() {
            let mut cfg = GoodSetConfig::new(f.clone(), 0.01, alpha);
            cfg.n_fibers = 1000;
            let rep = run_good_set(&cfg)?;
            println!(
                "alpha {alpha}: {f:?}\n  int f {:.3e} (delta^3 {:.0e}), good {}/{} = {:.4} (need > {:.2}), {:?}",
                rep.integral, rep.delta_cubed, rep.good_fibers, rep.n_fibers, rep.fraction, rep.required, rep.status
            );
        }
    }
    Ok(())
}
