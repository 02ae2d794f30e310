//! Both sides of the coarea formula for the two torus fibrations, with the
//! alternative closed-form Jacobian for comparison.
//!
//! ```bash
//! cargo run --release --example coarea_audit
//! ```

use linkprobe::harness::{run_coarea_check, Fibration};

fn main() -> linkprobe::error::Result<()> {
    for f in [Fibration::Eta, Fibration::XiTilde] {
        let rep = run_coarea_check(f, 128)?;
        for row in &rep.rows {
            println!(
                "{f:?} g = {:?}: lhs {:.6}, rhs {:.6}, closed form {:.6}, alternative lhs {:.6} (off by {:.1}%)",
                row.weight,
                row.lhs,
                row.rhs,
                row.closed_form,
                row.lhs_printed,
                100.0 * row.mismatch_printed
            );
        }
    }
    Ok(())
}
