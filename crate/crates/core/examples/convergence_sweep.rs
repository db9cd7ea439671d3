//! Full convergence sweep of the fractional Laplace problem written as CSV,
//! one line per basis size — the same records the `sweep` subcommand emits.
//!
//! ```bash
//! cargo run --release --example convergence_sweep
//! ```

use hermfrac::basis::BasisKind;
use hermfrac::bench::{run_convergence, write_convergence_csv, ExperimentId, ExperimentSpec};
use hermfrac::fracdm::FracOrder;

fn main() -> hermfrac::Result<()> {
    let mut spec = ExperimentSpec::preset(
        ExperimentId::Laplace1d,
        BasisKind::Normalized,
        vec![FracOrder::new(0.4)?, FracOrder::new(1.0)?, FracOrder::new(1.6)?],
    )?;
    // one sweep per order, concatenated
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (i, alpha) in spec.alphas.clone().into_iter().enumerate() {
        spec.alphas = vec![alpha];
        let records = run_convergence(&spec)?;
        if i == 0 {
            write_convergence_csv(&mut out, &records)?;
        } else {
            // skip the repeated header
            let mut buf = Vec::new();
            write_convergence_csv(&mut buf, &records)?;
            let text = String::from_utf8(buf).expect("csv is utf-8");
            for line in text.lines().skip(1) {
                use std::io::Write;
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}
