//! Chart-rescaled estimates along the three catalog sequences.
//!
//! ```bash
//! cargo run --release --example weak_limit
//! ```

use linkprobe::harness::{run_weak_limit, SequenceTag, WeakLimitConfig};

fn main() -> linkprobe::error::Result<()> {
    for tag in [
        SequenceTag::Oscillation,
        SequenceTag::Constant,
        SequenceTag::AmplitudeDecay,
    ] {
        let mut cfg = WeakLimitConfig::new(tag);
        cfg.j_ladder = vec![1, 4, 16, 64];
        let rep = run_weak_limit(&cfg)?;
        println!(
            "{tag:?}: threshold {:.3}, limit Jacobian min {:.3}",
            rep.threshold, rep.limit_jacobian_min
        );
        for s in &rep.summaries {
            let row: Vec<String> = rep
                .rows
                .iter()
                .filter(|r| r.radius == s.radius)
                .map(|r| format!("{:.3}", r.estimate))
                .collect();
            println!(
                "  r {:.4}: [{}] limit term {:.3}, j0 {:?}",
                s.radius,
                row.join(", "),
                s.limit_term,
                s.j0
            );
        }
    }
    Ok(())
}
