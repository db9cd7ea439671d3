//! Fractional harmonic oscillator ((−Δ)^{α/2} + x²) u = λ u at α = 1:
//! the discrete spectrum converges algebraically to the Airy-root values.
//!
//! ```bash
//! cargo run --release --example eigenvalues
//! ```

use hermfrac::bench::{run_eigen_study, OSCILLATOR_EIGENVALUES};
use hermfrac::fracdm::FracOrder;

fn main() -> hermfrac::Result<()> {
    let alpha = FracOrder::new(1.0)?;
    println!("reference eigenvalues: {OSCILLATOR_EIGENVALUES:?}");
    println!(
        "{:>4} {:>18} {:>18} {:>18} {:>10} {:>10} {:>10}",
        "N", "lambda1", "lambda2", "lambda3", "err1", "err2", "err3"
    );
    for rec in run_eigen_study(&[32, 64, 128, 256], alpha)? {
        println!(
            "{:>4} {:>18.12} {:>18.12} {:>18.12} {:>10.2e} {:>10.2e} {:>10.2e}",
            rec.n, rec.lambda[0], rec.lambda[1], rec.lambda[2], rec.err[0], rec.err[1], rec.err[2]
        );
    }
    Ok(())
}
