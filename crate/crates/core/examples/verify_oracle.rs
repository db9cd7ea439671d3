//! Check every entry of the assembled matrices against the independent
//! Fourier-quadrature oracle — the same check as `hermfrac verify`.
//!
//! ```bash
//! cargo run --release --example verify_oracle
//! ```

use hermfrac::basis::BasisKind;
use hermfrac::bench::verify_against_oracle;
use hermfrac::fracdm::FracOrder;

fn main() -> hermfrac::Result<()> {
    let alphas = [
        FracOrder::new(0.4)?,
        FracOrder::new(1.0)?,
        FracOrder::new(1.6)?,
    ];
    for basis in [BasisKind::Overscaled, BasisKind::Normalized] {
        let (max_rel, max_abs) = verify_against_oracle(basis, &alphas, 16)?;
        println!(
            "{basis:>11}: max relative deviation {max_rel:.3e} (entries above 1e-8), \
             max absolute {max_abs:.3e} (below)"
        );
    }
    Ok(())
}
