use super::*;
use crate::fracdm::{frac_normalized_apply, frac_overscaled_entry};
use crate::specfun::{hermite_eval, HermiteKind};

fn a(v: f64) -> FracOrder {
    FracOrder::new(v).unwrap()
}

#[test]
fn synth_single_basis_function_is_the_entry() {
    // exact = H̃_2, γ = 0: g(x) = (−Δ)^{α/2} H̃_2 (x) pointwise
    let alpha = a(1.0);
    let s = synth_rhs(
        |x| hermite_eval(HermiteKind::Overscaled, 2, x),
        &[alpha],
        0.0,
        &Nonlinearity::None,
        BasisKind::Overscaled,
        1.0,
        16,
    )
    .unwrap();
    for x in [-3.0, -0.7, 0.0, 0.4, 2.2] {
        let want = frac_overscaled_entry(2, alpha, x).unwrap();
        assert!((s.eval(x) - want).abs() < 1e-10, "x={x}");
    }
    assert!(!s.under_resolved);
}

#[test]
fn synth_linear_reaction_adds_pointwise() {
    // γ = 2, f = u, exact = Ĥ_0: g = (−Δ)^{α/2}Ĥ_0 + 2Ĥ_0
    let alpha = a(0.6);
    let s = synth_rhs(
        |x| hermite_eval(HermiteKind::Normalized, 0, x),
        &[alpha],
        2.0,
        &Nonlinearity::LinearU,
        BasisKind::Normalized,
        1.0,
        16,
    )
    .unwrap();
    for x in [-1.5, 0.0, 0.9] {
        let want = frac_normalized_apply(0, alpha, x).unwrap()
            + 2.0 * hermite_eval(HermiteKind::Normalized, 0, x);
        assert!((s.eval(x) - want).abs() < 1e-10, "x={x}");
    }
}

#[test]
fn synth_is_oversampling_independent() {
    // g built at M = 80 and M = 120 agrees on [-6, 6]
    let alpha = a(1.0);
    let build = |m: usize| {
        synth_rhs(
            |x: f64| (-x * x).exp() * x.sin(),
            &[alpha],
            0.0,
            &Nonlinearity::None,
            BasisKind::Overscaled,
            1.0,
            m,
        )
        .unwrap()
    };
    let s80 = build(80);
    let s120 = build(120);
    for i in 0..=60 {
        let x = -6.0 + 0.2 * i as f64;
        let d = (s80.eval(x) - s120.eval(x)).abs();
        assert!(d < 1e-9, "x={x}: {d}");
    }
}

#[test]
fn presets_and_validation() {
    let spec = ExperimentSpec::preset(
        ExperimentId::Laplace1d,
        BasisKind::Normalized,
        vec![a(1.0)],
    )
    .unwrap();
    assert_eq!(spec.exact, ExactSolution::GaussSin);
    assert!((spec.r - std::f64::consts::SQRT_2).abs() < 1e-15);

    let mut bad = spec.clone();
    bad.n_list = vec![20, 10];
    assert!(bad.validate().is_err());
    let mut bad2 = spec.clone();
    bad2.oversample = 30; // below 2·max(N)
    assert!(bad2.validate().is_err());
    assert!(ExperimentId::parse("no-such") .is_err());
    assert!(ExactSolution::parse("exp-x2-sin").is_ok());
}

#[test]
fn laplace_sweep_error_decays() {
    let mut spec = ExperimentSpec::preset(
        ExperimentId::Laplace1d,
        BasisKind::Normalized,
        vec![a(1.0)],
    )
    .unwrap();
    spec.n_list = vec![10, 20];
    let recs = run_convergence(&spec).unwrap();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r.status == RunStatus::Ok));
    assert!(
        recs[1].e_m < recs[0].e_m,
        "{} !< {}",
        recs[1].e_m,
        recs[0].e_m
    );
}

#[test]
fn sweeps_are_deterministic_apart_from_wall_time() {
    let mut spec = ExperimentSpec::preset(
        ExperimentId::Laplace1d,
        BasisKind::Overscaled,
        vec![a(0.4)],
    )
    .unwrap();
    spec.n_list = vec![8, 12];
    let r1 = run_convergence(&spec).unwrap();
    let r2 = run_convergence(&spec).unwrap();
    let strip = |recs: &[ConvergenceRecord]| {
        let mut buf = Vec::new();
        write_convergence_csv(&mut buf, recs).unwrap();
        String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                let mut kept = cols.clone();
                if kept.len() == 8 {
                    kept.remove(6); // wall_ms
                }
                kept.join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&r1), strip(&r2));
}

#[test]
fn csv_schema_is_stable() {
    let rec = ConvergenceRecord {
        n: 10,
        alphas: vec![0.139, 0.66],
        r: 1.0,
        e_w: 1.5e-3,
        e_m: 2.5e-4,
        kappa: 1e6,
        wall_ms: 12.5,
        status: RunStatus::Ok,
    };
    let mut buf = Vec::new();
    write_convergence_csv(&mut buf, &[rec]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "N,alpha,r,e_w,e_m,kappa,wall_ms,status");
    let row = lines.next().unwrap();
    assert!(row.starts_with("10,"));
    assert!(row.contains(';'), "multi-term alphas are ;-joined: {row}");
    assert!(row.ends_with(",ok"));
    // at least 12 significant digits
    assert!(row.contains("1.500000000000e-3"), "{row}");
}

#[test]
fn eigen_study_reports_reference_errors() {
    let recs = run_eigen_study(&[24, 48], a(1.0)).unwrap();
    assert_eq!(recs.len(), 2);
    for rec in &recs {
        assert_eq!(rec.status, RunStatus::Ok);
        for e in rec.err {
            assert!(e < 1e-3);
        }
    }
    assert!(recs[1].err[0] < recs[0].err[0]);
}

#[test]
fn cli_exit_codes() {
    // unknown flag → 2
    assert_eq!(cli::run(["hermfrac", "sweep", "--bogus"]), 2);
    // unknown experiment → 2
    assert_eq!(
        cli::run(["hermfrac", "sweep", "--experiment", "nope", "--nlist", "8"]),
        2
    );
    // verify on a small matrix → 0
    assert_eq!(
        cli::run([
            "hermfrac", "verify", "--basis", "overscaled", "--alpha", "1.0", "--n", "6",
        ]),
        0
    );
}

#[test]
fn cli_sweep_writes_csv_with_config_defaults() {
    let dir = std::env::temp_dir();
    let cfg = dir.join("hermfrac_test_cfg.txt");
    let out = dir.join("hermfrac_test_sweep.csv");
    std::fs::write(
        &cfg,
        "experiment=laplace-1d\nbasis=overscaled\nalpha=1.0\nnlist=8,12\n",
    )
    .unwrap();
    let code = cli::run([
        "hermfrac",
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("N,alpha,r,e_w,e_m,kappa,wall_ms,status\n"));
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_file(cfg).ok();
    std::fs::remove_file(out).ok();
}
