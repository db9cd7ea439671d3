//! Newton iteration for (−Δ)^{α/2} u + u² = g with a manufactured exact
//! solution, showing the residual history and the error per basis size.
//!
//! ```bash
//! cargo run --release --example solve_nonlinear
//! ```

use hermfrac::basis::BasisKind;
use hermfrac::bench::{synth_rhs, ExactSolution};
use hermfrac::fracdm::FracOrder;
use hermfrac::quadrature::{error_norms, gauss_hermite};
use hermfrac::solve::{solve_newton, CollocationProblem, Nonlinearity};

fn main() -> hermfrac::Result<()> {
    let alpha = FracOrder::new(1.0)?;
    let exact = ExactSolution::HalfGaussSinPlusX2; // e^{-x²/2}(sin x + x²)
    println!("u = exp(-x^2/2)(sin x + x^2), normalized basis, f(u) = u^2");
    println!("{:>4} {:>6} {:>12} {:>12}", "N", "iters", "residual", "e_m");
    for n in [10usize, 20, 30, 40] {
        let g = synth_rhs(
            move |x| exact.eval(x),
            &[alpha],
            1.0,
            &Nonlinearity::SquareU,
            BasisKind::Normalized,
            1.0,
            (2 * n).max(64),
        )?;
        let problem = CollocationProblem::new_1d(
            vec![alpha],
            1.0,
            Nonlinearity::SquareU,
            move |x| g.eval(x),
            BasisKind::Normalized,
            1.0,
            n,
        )?;
        let sol = solve_newton(&problem, 1e-14, 25)?;
        let rule = gauss_hermite(2 * n)?;
        let pair = error_norms(
            |x| exact.eval(x),
            |x| sol.evaluate(x),
            &rule,
            BasisKind::Normalized,
            1.0,
        );
        println!(
            "{n:>4} {:>6} {:>12.3e} {:>12.3e}",
            sol.iterations, sol.residual_norm, pair.e_m
        );
        if n == 40 {
            println!("residual history: {:?}", sol.residual_history);
        }
    }
    Ok(())
}
