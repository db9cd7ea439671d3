//! Benchmark harness: manufactured-solution right-hand sides, convergence
//! sweeps over N/α/r, condition-number reporting, eigenvalue studies, and
//! CSV emission.

pub mod cli;
mod csv;
mod synth;

pub use csv::{write_convergence_csv, write_eigen_csv};
pub use synth::{synth_rhs, synth_rhs_2d, SynthRhs, SynthRhs2d};

use std::time::Instant;

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::fracdm::{dm_multiterm, dm_multiterm_2d, FracOrder};
use crate::quadrature::{error_norms, error_norms_2d, gauss_hermite};
use crate::solve::{
    condition_number, solve_eigen, solve_linear, solve_newton, CollocationProblem,
    Nonlinearity, NEWTON_DEFAULT_TOL,
};

/// Reference eigenvalues of the α = 1 fractional harmonic oscillator
/// (negated Airy-function and Airy-derivative roots).
pub const OSCILLATOR_EIGENVALUES: [f64; 3] =
    [1.01879297164747, 2.33810741045976, 3.24819758217983];

/// The experiment families the harness reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentId {
    Laplace1d,
    Linear1d,
    Linear2d,
    Multiterm1d,
    Nonlinear1d,
    Eigen1d,
}

impl ExperimentId {
    pub fn parse(s: &str) -> Result<ExperimentId> {
        Ok(match s {
            "laplace-1d" => ExperimentId::Laplace1d,
            "linear-1d" => ExperimentId::Linear1d,
            "linear-2d" => ExperimentId::Linear2d,
            "multiterm-1d" => ExperimentId::Multiterm1d,
            "nonlinear-1d" => ExperimentId::Nonlinear1d,
            "eigen-1d" => ExperimentId::Eigen1d,
            other => {
                return Err(Error::Usage(format!(
                    "unknown experiment '{other}' (expected laplace-1d|linear-1d|linear-2d|multiterm-1d|nonlinear-1d|eigen-1d)"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::Laplace1d => "laplace-1d",
            ExperimentId::Linear1d => "linear-1d",
            ExperimentId::Linear2d => "linear-2d",
            ExperimentId::Multiterm1d => "multiterm-1d",
            ExperimentId::Nonlinear1d => "nonlinear-1d",
            ExperimentId::Eigen1d => "eigen-1d",
        }
    }

    pub fn dim(self) -> usize {
        if self == ExperimentId::Linear2d {
            2
        } else {
            1
        }
    }
}

/// Closed catalog of manufactured exact solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactSolution {
    /// e^{-x²} sin x
    GaussSin,
    /// e^{-x²/2} x² cos x
    HalfGaussX2Cos,
    /// e^{-2x²} x² cos x
    TightGaussX2Cos,
    /// e^{-(x²+y²)} sin(x+y)
    Gauss2dSin,
    /// e^{-3x²/2} (sin x + x⁶ + x² cos x)
    GaussPoly,
    /// e^{-x²} (sin x + x²)
    GaussSinPlusX2,
    /// e^{-x²/2} (sin x + x²)
    HalfGaussSinPlusX2,
}

impl ExactSolution {
    pub fn parse(s: &str) -> Result<ExactSolution> {
        Ok(match s {
            "exp-x2-sin" => ExactSolution::GaussSin,
            "exp-x2half-x2cos" => ExactSolution::HalfGaussX2Cos,
            "exp-2x2-x2cos" => ExactSolution::TightGaussX2Cos,
            "exp-r2-sin-xy" => ExactSolution::Gauss2dSin,
            "exp-3x2half-poly" => ExactSolution::GaussPoly,
            "exp-x2-sin-x2" => ExactSolution::GaussSinPlusX2,
            "exp-x2half-sin-x2" => ExactSolution::HalfGaussSinPlusX2,
            other => return Err(Error::Usage(format!("unknown exact solution '{other}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ExactSolution::GaussSin => "exp-x2-sin",
            ExactSolution::HalfGaussX2Cos => "exp-x2half-x2cos",
            ExactSolution::TightGaussX2Cos => "exp-2x2-x2cos",
            ExactSolution::Gauss2dSin => "exp-r2-sin-xy",
            ExactSolution::GaussPoly => "exp-3x2half-poly",
            ExactSolution::GaussSinPlusX2 => "exp-x2-sin-x2",
            ExactSolution::HalfGaussSinPlusX2 => "exp-x2half-sin-x2",
        }
    }

    pub fn is_2d(self) -> bool {
        self == ExactSolution::Gauss2dSin
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            ExactSolution::GaussSin => (-x * x).exp() * x.sin(),
            ExactSolution::HalfGaussX2Cos => (-0.5 * x * x).exp() * x * x * x.cos(),
            ExactSolution::TightGaussX2Cos => (-2.0 * x * x).exp() * x * x * x.cos(),
            ExactSolution::GaussPoly => {
                (-1.5 * x * x).exp() * (x.sin() + x.powi(6) + x * x * x.cos())
            }
            ExactSolution::GaussSinPlusX2 => (-x * x).exp() * (x.sin() + x * x),
            ExactSolution::HalfGaussSinPlusX2 => (-0.5 * x * x).exp() * (x.sin() + x * x),
            ExactSolution::Gauss2dSin => panic!("2-D solution evaluated with one argument"),
        }
    }

    pub fn eval2(self, x: f64, y: f64) -> f64 {
        match self {
            ExactSolution::Gauss2dSin => (-(x * x + y * y)).exp() * (x + y).sin(),
            _ => panic!("1-D solution evaluated with two arguments"),
        }
    }
}

/// One sweep definition: which problem, which exact solution, orders,
/// reaction coefficient, basis, scaling, N schedule, and oversampling.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub experiment: ExperimentId,
    pub exact: ExactSolution,
    pub alphas: Vec<FracOrder>,
    pub gamma: f64,
    pub basis: BasisKind,
    pub r: f64,
    pub n_list: Vec<usize>,
    /// Synthesis resolution; 0 selects max(2N, 64) per N, capped by the
    /// basis assembly limit.
    pub oversample: usize,
}

impl ExperimentSpec {
    /// Defaults matching the study each experiment id reproduces; `basis`
    /// and `alphas` select the variant.
    pub fn preset(
        experiment: ExperimentId,
        basis: BasisKind,
        alphas: Vec<FracOrder>,
    ) -> Result<ExperimentSpec> {
        let spec = match experiment {
            ExperimentId::Laplace1d => ExperimentSpec {
                experiment,
                exact: ExactSolution::GaussSin,
                alphas,
                gamma: 0.0,
                basis,
                r: match basis {
                    BasisKind::Normalized => std::f64::consts::SQRT_2,
                    _ => 1.0,
                },
                n_list: vec![10, 20, 30, 40],
                oversample: 0,
            },
            ExperimentId::Linear1d => ExperimentSpec {
                experiment,
                exact: match basis {
                    BasisKind::Overscaled => ExactSolution::HalfGaussX2Cos,
                    _ => ExactSolution::TightGaussX2Cos,
                },
                alphas,
                gamma: 2.0,
                basis,
                r: match basis {
                    BasisKind::Overscaled => 0.5f64.sqrt(),
                    BasisKind::Lagrange => 1.0,
                    _ => 2.0,
                },
                n_list: vec![10, 20, 30, 40],
                oversample: 0,
            },
            ExperimentId::Linear2d => ExperimentSpec {
                experiment,
                exact: ExactSolution::Gauss2dSin,
                alphas,
                gamma: 2.0,
                basis: BasisKind::Overscaled,
                r: 1.0,
                n_list: vec![8, 12, 16, 20],
                oversample: 0,
            },
            ExperimentId::Multiterm1d => ExperimentSpec {
                experiment,
                exact: ExactSolution::GaussPoly,
                alphas: if alphas.is_empty() {
                    multiterm_default_orders()
                } else {
                    alphas
                },
                gamma: 0.0,
                basis,
                r: 1.5f64.sqrt(),
                n_list: vec![10, 20, 30, 40, 50],
                oversample: 0,
            },
            ExperimentId::Nonlinear1d => ExperimentSpec {
                experiment,
                exact: match basis {
                    BasisKind::Overscaled => ExactSolution::GaussSinPlusX2,
                    _ => ExactSolution::HalfGaussSinPlusX2,
                },
                alphas,
                gamma: 1.0,
                basis,
                r: 1.0,
                n_list: vec![10, 20, 30, 40],
                oversample: 0,
            },
            ExperimentId::Eigen1d => ExperimentSpec {
                experiment,
                exact: ExactSolution::GaussSin, // unused
                alphas,
                gamma: 0.0,
                basis: BasisKind::Lagrange,
                r: 1.0,
                n_list: vec![32, 64, 128, 256],
                oversample: 0,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::Usage("at least one fractional order is required".into()));
        }
        if self.n_list.is_empty() || self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Usage("the N list must be strictly ascending".into()));
        }
        if self.experiment != ExperimentId::Eigen1d && self.exact.is_2d() != (self.experiment.dim() == 2)
        {
            return Err(Error::Usage(
                "exact solution dimension does not match the experiment".into(),
            ));
        }
        if self.experiment.dim() == 2 && self.basis == BasisKind::Lagrange {
            return Err(Error::Usage("2-D sweeps run on the modal bases".into()));
        }
        let max_n = *self.n_list.last().unwrap();
        if self.oversample != 0 {
            if self.oversample < 2 * max_n {
                return Err(Error::Usage(format!(
                    "oversampling {} is below twice the largest N ({max_n})",
                    self.oversample
                )));
            }
            if self.oversample > 512 {
                return Err(Error::Usage("oversampling is capped at 512".into()));
            }
        }
        Ok(())
    }

    fn nonlinearity(&self) -> Nonlinearity {
        match self.experiment {
            ExperimentId::Linear1d | ExperimentId::Linear2d => Nonlinearity::LinearU,
            ExperimentId::Nonlinear1d => Nonlinearity::SquareU,
            _ => Nonlinearity::None,
        }
    }

    /// Synthesis resolution for one sweep step.
    pub fn oversample_for(&self, n: usize) -> usize {
        let auto = (2 * n).clamp(64, 512);
        let m = if self.oversample != 0 { self.oversample } else { auto };
        let cap = match (self.basis, self.experiment.dim()) {
            (BasisKind::Overscaled, 1) => crate::fracdm::MAX_N_OVERSCALED_1D,
            (_, 1) => crate::specfun::MONOMIAL_TABLE_MAX,
            _ => crate::fracdm::MAX_N_OVERSCALED_2D,
        };
        m.min(cap)
    }
}

/// The distributed-order quadrature points used by the multi-term study.
pub fn multiterm_default_orders() -> Vec<FracOrder> {
    [0.139, 0.660, 1.340, 1.861]
        .iter()
        .map(|&a| FracOrder::new(a).expect("orders in range"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    WarnUnderresolved,
    Fail,
}

impl RunStatus {
    pub fn name(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::WarnUnderresolved => "warn-underresolved",
            RunStatus::Fail => "fail",
        }
    }
}

/// One sweep row.
#[derive(Clone, Debug)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub r: f64,
    pub e_w: f64,
    pub e_m: f64,
    pub kappa: f64,
    pub wall_ms: f64,
    pub status: RunStatus,
}

/// Run the full sweep; per-N failures land in the row's status and the
/// sweep continues. Deterministic apart from wall_ms.
pub fn run_convergence(spec: &ExperimentSpec) -> Result<Vec<ConvergenceRecord>> {
    spec.validate()?;
    if spec.experiment == ExperimentId::Eigen1d {
        return Err(Error::Usage(
            "the eigenvalue study emits its own records; use run_eigen_study".into(),
        ));
    }
    if spec.basis == BasisKind::Lagrange {
        eprintln!("note: weighted norm e_w uses unit weight for the lagrange basis");
    }
    let mut out = Vec::with_capacity(spec.n_list.len());
    for &n in &spec.n_list {
        let t0 = Instant::now();
        let row = match run_single(spec, n) {
            Ok((e_w, e_m, kappa, warn)) => ConvergenceRecord {
                n,
                alphas: spec.alphas.iter().map(|a| a.value()).collect(),
                r: spec.r,
                e_w,
                e_m,
                kappa,
                wall_ms: 0.0,
                status: if warn {
                    RunStatus::WarnUnderresolved
                } else {
                    RunStatus::Ok
                },
            },
            Err(err) => {
                eprintln!("sweep step N={n} failed: {err}");
                ConvergenceRecord {
                    n,
                    alphas: spec.alphas.iter().map(|a| a.value()).collect(),
                    r: spec.r,
                    e_w: f64::NAN,
                    e_m: f64::NAN,
                    kappa: f64::NAN,
                    wall_ms: 0.0,
                    status: RunStatus::Fail,
                }
            }
        };
        let mut row = row;
        row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
        out.push(row);
    }
    Ok(out)
}

fn run_single(spec: &ExperimentSpec, n: usize) -> Result<(f64, f64, f64, bool)> {
    let m = spec.oversample_for(n);
    let err_rule = gauss_hermite((2 * n).clamp(64, 512))?;
    if spec.experiment.dim() == 1 {
        let exact = spec.exact;
        let synth = synth_rhs(
            move |x| exact.eval(x),
            &spec.alphas,
            spec.gamma,
            &spec.nonlinearity(),
            spec.basis,
            spec.r,
            m,
        )?;
        let warn = synth.under_resolved;
        let problem = CollocationProblem::new_1d(
            spec.alphas.clone(),
            spec.gamma,
            spec.nonlinearity(),
            move |x| synth.eval(x),
            spec.basis,
            spec.r,
            n,
        )?;
        let sol = match spec.experiment {
            ExperimentId::Nonlinear1d => solve_newton(&problem, NEWTON_DEFAULT_TOL, 25)?,
            _ => solve_linear(&problem)?,
        };
        let pair = error_norms(
            |x| exact.eval(x),
            |x| sol.evaluate(x),
            &err_rule,
            spec.basis,
            spec.r,
        );
        let dm = dm_multiterm(n, &spec.alphas, spec.basis, spec.r)?;
        Ok((pair.e_w, pair.e_m, condition_number(&dm.entries), warn))
    } else {
        let exact = spec.exact;
        let synth = synth_rhs_2d(
            move |x, y| exact.eval2(x, y),
            &spec.alphas,
            spec.gamma,
            &spec.nonlinearity(),
            spec.basis,
            spec.r,
            m,
        )?;
        let warn = synth.under_resolved;
        let problem = CollocationProblem::new_2d(
            spec.alphas.clone(),
            spec.gamma,
            spec.nonlinearity(),
            move |x, y| synth.eval(x, y),
            spec.basis,
            spec.r,
            n,
        )?;
        let sol = solve_linear(&problem)?;
        let pair = error_norms_2d(
            |x, y| exact.eval2(x, y),
            |x, y| sol.evaluate2(x, y),
            &err_rule,
            spec.basis,
            spec.r,
        );
        let dm = dm_multiterm_2d(n, &spec.alphas, spec.basis)?;
        Ok((pair.e_w, pair.e_m, condition_number(&dm.entries), warn))
    }
}

/// One eigenvalue-study row: the first three eigenvalues and their absolute
/// errors against the Airy-root references.
#[derive(Clone, Debug)]
pub struct EigenRecord {
    pub n: usize,
    pub alpha: f64,
    pub lambda: [f64; 3],
    pub err: [f64; 3],
    pub wall_ms: f64,
    pub status: RunStatus,
}

pub fn run_eigen_study(n_list: &[usize], alpha: FracOrder) -> Result<Vec<EigenRecord>> {
    if n_list.is_empty() {
        return Err(Error::Usage("the N list must not be empty".into()));
    }
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let t0 = Instant::now();
        let rec = match solve_eigen(n, alpha) {
            Ok(res) if res.eigenvalues.len() >= 3 => {
                let lambda = [res.eigenvalues[0], res.eigenvalues[1], res.eigenvalues[2]];
                let err = [
                    (lambda[0] - OSCILLATOR_EIGENVALUES[0]).abs(),
                    (lambda[1] - OSCILLATOR_EIGENVALUES[1]).abs(),
                    (lambda[2] - OSCILLATOR_EIGENVALUES[2]).abs(),
                ];
                EigenRecord {
                    n,
                    alpha: alpha.value(),
                    lambda,
                    err,
                    wall_ms: 0.0,
                    status: RunStatus::Ok,
                }
            }
            Ok(_) | Err(_) => EigenRecord {
                n,
                alpha: alpha.value(),
                lambda: [f64::NAN; 3],
                err: [f64::NAN; 3],
                wall_ms: 0.0,
                status: RunStatus::Fail,
            },
        };
        let mut rec = rec;
        rec.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
        out.push(rec);
    }
    Ok(out)
}

/// Max deviation of an assembled matrix from the quadrature oracle:
/// relative where the oracle value is above 1e-8 in magnitude, absolute
/// (scaled to the 1e-9 target) below.
pub fn verify_against_oracle(
    basis: BasisKind,
    alphas: &[FracOrder],
    n: usize,
) -> Result<(f64, f64)> {
    use crate::fracdm::{dm_normalized_1d, dm_overscaled_1d, oracle_frac_apply};
    let rule = gauss_hermite(n)?;
    let mut max_rel = 0.0f64;
    let mut max_abs_small = 0.0f64;
    for &alpha in alphas {
        let dm = match basis {
            BasisKind::Overscaled => dm_overscaled_1d(n, alpha, 1.0)?,
            BasisKind::Normalized => dm_normalized_1d(n, alpha, 1.0)?,
            BasisKind::Lagrange => {
                return Err(Error::Usage(
                    "oracle verification covers the modal bases".into(),
                ))
            }
        };
        for (i, &x) in rule.nodes().iter().enumerate() {
            for j in 0..n {
                let orc = oracle_frac_apply(basis, j, alpha, x)?;
                let d = (dm.entries[(i, j)] - orc).abs();
                if orc.abs() > 1e-8 {
                    max_rel = max_rel.max(d / orc.abs());
                } else {
                    max_abs_small = max_abs_small.max(d);
                }
            }
        }
    }
    Ok((max_rel, max_abs_small))
}

#[cfg(test)]
mod tests;
