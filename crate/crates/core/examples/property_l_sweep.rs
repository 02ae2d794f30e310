//! A small property (L) sweep on an orientation-preserving profile and on the
//! reversing control, written as JSON lines and CSV.
//!
//! ```bash
//! cargo run --release --example property_l_sweep
//! ```

use linkprobe::harness::{run_property_l, write_csv, write_jsonl, MapSpec, PropertyLConfig};

fn main() -> linkprobe::error::Result<()> {
    for map in ["axisym:cubic-table", "diag:1,1,-1"] {
        let mut cfg = PropertyLConfig::new(MapSpec::Tag(map.into()));
        cfg.n_a = 12;
        cfg.n_b = 12;
        cfg.n_curve = 128;
        cfg.seed = 42;
        let rep = run_property_l(&cfg)?;
        let agg = &rep.aggregate;
        println!(
            "{map}: {} samples, {} defined, {} negative, {:.1}% equal to -1, {} disagreements",
            agg.samples,
            agg.defined,
            agg.negative,
            100.0 * agg.minus_one_fraction(),
            agg.disagreements
        );
        let mut jsonl = Vec::new();
        write_jsonl(&rep, &mut jsonl)?;
        let mut csv = Vec::new();
        write_csv(&rep, &mut csv)?;
        let first = String::from_utf8_lossy(&csv)
            .lines()
            .take(2)
            .collect::<Vec<_>>()
            .join("\n");
        println!("  {} bytes of JSON lines; CSV starts\n{first}", jsonl.len());
    }
    Ok(())
}
