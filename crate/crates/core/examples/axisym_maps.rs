//! Runs every check on every catalog profile.
//!
//! ```bash
//! cargo run --release --example axisym_maps
//! ```

use linkprobe::harness::{run_axisym_check, AxisymCheck};
use linkprobe::sobolev::{catalog, CATALOG};

fn main() -> linkprobe::error::Result<()> {
    for name in CATALOG {
        let rep = run_axisym_check(&catalog(name)?, &AxisymCheck::ALL, 1)?;
        let line: Vec<String> = rep
            .outcomes
            .iter()
            .map(|o| format!("{:?} {}", o.check, if o.passed { "ok" } else { "FAIL" }))
            .collect();
        println!("{name:12} {}", line.join(", "));
    }
    Ok(())
}
