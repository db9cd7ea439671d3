//! Solve (−Δ)^{α/2} u + 2u = g with a manufactured solution and print the
//! convergence of the nodal error, with and without a matched scaling
//! factor.
//!
//! ```bash
//! cargo run --release --example solve_linear
//! ```

use hermfrac::basis::BasisKind;
use hermfrac::bench::{run_convergence, ExperimentId, ExperimentSpec};
use hermfrac::fracdm::FracOrder;

fn main() -> hermfrac::Result<()> {
    let alpha = FracOrder::new(1.0)?;
    println!("u = exp(-x^2/2) x^2 cos x, over-scaled basis, gamma = 2");
    for (label, r) in [("matched r = 1/sqrt(2)", 0.5f64.sqrt()), ("unscaled r = 1", 1.0)] {
        let mut spec =
            ExperimentSpec::preset(ExperimentId::Linear1d, BasisKind::Overscaled, vec![alpha])?;
        spec.r = r;
        let records = run_convergence(&spec)?;
        println!("\n{label}:");
        println!("{:>4} {:>12} {:>12} {:>12}", "N", "e_w", "e_m", "kappa");
        for rec in records {
            println!(
                "{:>4} {:>12.3e} {:>12.3e} {:>12.3e}",
                rec.n, rec.e_w, rec.e_m, rec.kappa
            );
        }
    }
    Ok(())
}
