//! Two-dimensional solve on the tensor basis:
//! (−Δ)^{α/2} u + 2u = g with u = exp(-(x²+y²)) sin(x+y).
//!
//! ```bash
//! cargo run --release --example solve_2d
//! ```

use hermfrac::basis::BasisKind;
use hermfrac::bench::{run_convergence, ExperimentId, ExperimentSpec};
use hermfrac::fracdm::FracOrder;

fn main() -> hermfrac::Result<()> {
    println!("u = exp(-(x^2+y^2)) sin(x+y), over-scaled tensor basis, gamma = 2");
    for alpha in [0.4, 1.0, 1.6] {
        let spec = ExperimentSpec::preset(
            ExperimentId::Linear2d,
            BasisKind::Overscaled,
            vec![FracOrder::new(alpha)?],
        )?;
        let records = run_convergence(&spec)?;
        println!("\nalpha = {alpha}:");
        println!("{:>4} {:>12} {:>12} {:>12}", "N/dim", "e_w", "e_m", "kappa");
        for rec in records {
            println!(
                "{:>4} {:>12.3e} {:>12.3e} {:>12.3e}",
                rec.n, rec.e_w, rec.e_m, rec.kappa
            );
        }
    }
    Ok(())
}
