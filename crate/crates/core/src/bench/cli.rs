//! Command-line harness. Subcommands: `dm` (assemble + dump + κ), `solve`
//! (one problem), `sweep` (convergence study → CSV), `eigen` (eigenvalue
//! study → CSV), `verify` (oracle-equivalence check). A key=value config
//! file supplies defaults; flags override it. Exit codes: 0 success,
//! 1 numeric failure, 2 usage error.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::basis::BasisKind;
use crate::bench::{
    run_convergence, run_eigen_study, verify_against_oracle, write_convergence_csv,
    write_eigen_csv, ExperimentId, ExperimentSpec,
};
use crate::error::{Error, Result};
use crate::fracdm::{
    dm_multiterm, dm_multiterm_2d, dm_normalized_1d, dm_overscaled_1d, FracOrder,
};
use crate::solve::condition_number;

#[derive(Parser)]
#[command(
    name = "hermfrac",
    version,
    about = "Hermite spectral collocation for fractional Laplacian problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble a differentiation matrix, report its condition number, and
    /// optionally dump it (.csv or .bin by extension).
    Dm(CommonArgs),
    /// Solve one collocation problem from an experiment preset.
    Solve(CommonArgs),
    /// Run a convergence sweep and emit CSV records.
    Sweep(CommonArgs),
    /// Eigenvalue study: first three eigenvalues per N with reference errors.
    Eigen(CommonArgs),
    /// Compare assembled matrix entries against the Fourier-quadrature
    /// oracle; exits 0 iff the max relative deviation is at most 1e-7.
    Verify(CommonArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Experiment id: laplace-1d|linear-1d|linear-2d|multiterm-1d|nonlinear-1d|eigen-1d
    #[arg(long)]
    experiment: Option<String>,
    /// Basis: overscaled|normalized|lagrange
    #[arg(long)]
    basis: Option<String>,
    /// Fractional order(s); repeatable or comma-separated
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<String>,
    /// Reaction coefficient γ
    #[arg(long)]
    gamma: Option<f64>,
    /// Scaling factor r
    #[arg(long)]
    r: Option<f64>,
    /// Single basis size (dm, solve, verify)
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated N schedule (sweep, eigen)
    #[arg(long, value_delimiter = ',')]
    nlist: Vec<usize>,
    /// Synthesis resolution (0 = automatic max(2N, 64))
    #[arg(long)]
    oversample: Option<usize>,
    /// Output path (CSV records or matrix dump)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long)]
    format: Option<String>,
    /// Reserved for future randomized studies
    #[arg(long)]
    seed: Option<u64>,
    /// key=value defaults file (flags take precedence)
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Resolved {
    experiment: Option<ExperimentId>,
    basis: BasisKind,
    alphas: Vec<FracOrder>,
    gamma: Option<f64>,
    r: Option<f64>,
    n: usize,
    nlist: Vec<usize>,
    oversample: usize,
    out: Option<PathBuf>,
}

fn parse_config(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!("config line {} is not key=value: '{line}'", ln + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn resolve(args: &CommonArgs) -> Result<Resolved> {
    let cfg = match &args.config {
        Some(p) => parse_config(p)?,
        None => HashMap::new(),
    };
    let from_cfg = |key: &str| cfg.get(key).cloned();

    let experiment = match args.experiment.clone().or_else(|| from_cfg("experiment")) {
        Some(s) => Some(ExperimentId::parse(&s)?),
        None => None,
    };
    let basis = match args.basis.clone().or_else(|| from_cfg("basis")) {
        Some(s) => BasisKind::parse(&s)?,
        None => BasisKind::Overscaled,
    };
    let alpha_strings: Vec<String> = if !args.alpha.is_empty() {
        args.alpha.clone()
    } else if let Some(s) = from_cfg("alpha") {
        s.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        vec!["1.0".to_string()]
    };
    let mut alphas = Vec::new();
    for s in &alpha_strings {
        let v: f64 = s
            .parse()
            .map_err(|_| Error::Usage(format!("bad fractional order '{s}'")))?;
        alphas.push(FracOrder::new(v)?);
    }
    let parse_f64 = |s: String, key: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Usage(format!("bad value for {key}: '{s}'")))
    };
    let gamma = match args.gamma {
        Some(v) => Some(v),
        None => match from_cfg("gamma") {
            Some(s) => Some(parse_f64(s, "gamma")?),
            None => None,
        },
    };
    let r = match args.r {
        Some(v) => Some(v),
        None => match from_cfg("r") {
            Some(s) => Some(parse_f64(s, "r")?),
            None => None,
        },
    };
    let n = match args.n {
        Some(v) => v,
        None => match from_cfg("n") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::Usage(format!("bad value for n: '{s}'")))?,
            None => 16,
        },
    };
    let nlist: Vec<usize> = if !args.nlist.is_empty() {
        args.nlist.clone()
    } else if let Some(s) = from_cfg("nlist") {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad N in nlist: '{t}'")))
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let oversample = match args.oversample {
        Some(v) => v,
        None => match from_cfg("oversample") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::Usage(format!("bad value for oversample: '{s}'")))?,
            None => 0,
        },
    };
    let out = args.out.clone().or_else(|| from_cfg("out").map(PathBuf::from));
    if let Some(fmt) = args.format.clone().or_else(|| from_cfg("format")) {
        if fmt != "csv" {
            return Err(Error::Usage(format!(
                "unsupported format '{fmt}' (only csv)"
            )));
        }
    }
    Ok(Resolved {
        experiment,
        basis,
        alphas,
        gamma,
        r,
        n,
        nlist,
        oversample,
        out,
    })
}

fn build_spec(res: &Resolved) -> Result<ExperimentSpec> {
    let experiment = res
        .experiment
        .ok_or_else(|| Error::Usage("--experiment is required".into()))?;
    let mut spec = ExperimentSpec::preset(experiment, res.basis, res.alphas.clone())?;
    if let Some(g) = res.gamma {
        spec.gamma = g;
    }
    if let Some(r) = res.r {
        spec.r = r;
    }
    if !res.nlist.is_empty() {
        spec.n_list = res.nlist.clone();
    }
    spec.oversample = res.oversample;
    spec.validate()?;
    Ok(spec)
}

fn cmd_dm(res: &Resolved) -> Result<()> {
    let dm = match res.basis {
        BasisKind::Lagrange => dm_multiterm(res.n, &res.alphas, res.basis, res.r.unwrap_or(1.0))?,
        _ if res.experiment == Some(ExperimentId::Linear2d) => {
            dm_multiterm_2d(res.n, &res.alphas, res.basis)?
        }
        _ => dm_multiterm(res.n, &res.alphas, res.basis, res.r.unwrap_or(1.0))?,
    };
    let kappa = condition_number(&dm.entries);
    println!(
        "basis={} n={} dim={} alphas={:?} r={} kappa={:.6e}",
        dm.basis, dm.n_per_dim, dm.dim, dm.alphas, dm.r, kappa
    );
    if let Some(path) = &res.out {
        match path.extension().and_then(|e| e.to_str()) {
            Some("bin") => dm.write_binary(path)?,
            _ => dm.write_csv(path)?,
        }
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_solve(res: &Resolved) -> Result<()> {
    let mut spec = build_spec(res)?;
    spec.n_list = vec![res.n];
    let records = run_convergence(&spec)?;
    let rec = &records[0];
    println!(
        "experiment={} basis={} N={} e_w={:.6e} e_m={:.6e} kappa={:.6e} status={}",
        spec.experiment.name(),
        spec.basis,
        rec.n,
        rec.e_w,
        rec.e_m,
        rec.kappa,
        rec.status.name()
    );
    Ok(())
}

fn cmd_sweep(res: &Resolved) -> Result<()> {
    let spec = build_spec(res)?;
    let records = run_convergence(&spec)?;
    match &res.out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            write_convergence_csv(std::io::BufWriter::new(file), &records)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_convergence_csv(stdout.lock(), &records)?;
        }
    }
    if records.iter().any(|r| r.status == crate::bench::RunStatus::Fail) {
        return Err(Error::Numeric("one or more sweep steps failed".into()));
    }
    Ok(())
}

fn cmd_eigen(res: &Resolved) -> Result<()> {
    if res.alphas.len() != 1 {
        return Err(Error::Usage("the eigenvalue study takes one --alpha".into()));
    }
    let nlist = if res.nlist.is_empty() {
        vec![32, 64, 128, 256]
    } else {
        res.nlist.clone()
    };
    let records = run_eigen_study(&nlist, res.alphas[0])?;
    match &res.out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            write_eigen_csv(std::io::BufWriter::new(file), &records)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_eigen_csv(stdout.lock(), &records)?;
        }
    }
    if records.iter().any(|r| r.status == crate::bench::RunStatus::Fail) {
        return Err(Error::Numeric("one or more eigen steps failed".into()));
    }
    Ok(())
}

fn cmd_verify(res: &Resolved) -> Result<()> {
    // spot-assemble to fail early on unusable sizes
    for &alpha in &res.alphas {
        match res.basis {
            BasisKind::Overscaled => dm_overscaled_1d(res.n, alpha, 1.0).map(|_| ())?,
            BasisKind::Normalized => dm_normalized_1d(res.n, alpha, 1.0).map(|_| ())?,
            BasisKind::Lagrange => {
                return Err(Error::Usage(
                    "verification covers the modal bases".into(),
                ))
            }
        }
    }
    let (max_rel, max_abs_small) = verify_against_oracle(res.basis, &res.alphas, res.n)?;
    println!(
        "basis={} n={} max rel deviation={max_rel:.3e} (entries above 1e-8), max abs deviation={max_abs_small:.3e} (below)",
        res.basis, res.n
    );
    if max_rel <= 1e-7 && max_abs_small <= 1e-9 {
        Ok(())
    } else {
        Err(Error::Numeric(format!(
            "oracle deviation exceeds tolerance (rel {max_rel:.3e}, abs {max_abs_small:.3e})"
        )))
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap handles --help/--version with success codes
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            let _ = std::io::stdout().flush();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Dm(args) => resolve(args).and_then(|r| cmd_dm(&r)),
        Command::Solve(args) => resolve(args).and_then(|r| cmd_solve(&r)),
        Command::Sweep(args) => resolve(args).and_then(|r| cmd_sweep(&r)),
        Command::Eigen(args) => resolve(args).and_then(|r| cmd_eigen(&r)),
        Command::Verify(args) => resolve(args).and_then(|r| cmd_verify(&r)),
    };
    match outcome {
        Ok(()) => 0,
        Err(err @ Error::Usage(_)) => {
            eprintln!("{err}");
            2
        }
        Err(err) => {
            eprintln!("{err}");
            1
        }
    }
}
