//! Fractional differentiation matrices for every basis family and dimension,
//! with scaling factors and multi-term sums, plus an independent
//! Fourier-quadrature oracle.

pub(crate) mod entry1d;
pub(crate) mod entry2d;
mod io;
pub mod oracle;

use nalgebra::DMatrix;

use crate::basis::BasisKind;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_hermite, GaussHermiteRule};
use crate::specfun::{hermite_seq, monomial_coeffs_dd, HermiteKind};

pub use oracle::{oracle_frac_apply, oracle_frac_apply_2d};

/// Caps of the validated assembly ranges.
pub const MAX_N_OVERSCALED_1D: usize = 256;
pub const MAX_N_NORMALIZED_1D: usize = 120;
pub const MAX_N_OVERSCALED_2D: usize = 32;
pub const MAX_N_NORMALIZED_2D: usize = 24;
pub const MAX_N_QUADRATURE_1D: usize = 512;

/// Fractional order α ∈ (0, 2]. The endpoint α = 2 is admitted only for the
/// classical-Laplacian consistency check; solvers reject it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<FracOrder> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 2.0 {
            Ok(FracOrder(alpha))
        } else {
            Err(Error::Domain(format!(
                "fractional order must lie in (0, 2], got {alpha}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Orders a solver accepts (strictly below the classical endpoint).
    pub fn solver_admissible(self) -> bool {
        self.0 < 2.0
    }
}

impl std::fmt::Display for FracOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Collocation grid scaled by 1/r: the basis functions are φ_n(r·x), so the
/// physical collocation points are the Gauss-Hermite nodes divided by r.
#[derive(Clone, Debug)]
pub struct ScaledGrid {
    pub rule: GaussHermiteRule,
    pub r: f64,
    pub points: Vec<f64>,
}

impl ScaledGrid {
    pub fn new(rule: GaussHermiteRule, r: f64) -> Result<ScaledGrid> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("scaling factor must be > 0, got {r}")));
        }
        let points = rule.nodes().iter().map(|&x| x / r).collect();
        Ok(ScaledGrid { rule, r, points })
    }
}

/// How the 1-D matrices evaluate their ₁F₁ columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssemblyPath {
    /// Per-entry series evaluation (default; extended working precision).
    DirectSeries,
    /// Seed the first four columns, fill the rest by the contiguous
    /// recurrence in the first parameter (fast path, f64).
    Recurrence,
}

/// Row-major dense matrix of (−Δ)^{α/2} applied to the basis at the nodes:
/// entry (i, j) = r^α · (operator φ_j)(node_i). For dim = 2 the row index is
/// i·N + j over node pairs and the column index p·N + q over basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct FracDiffMatrix {
    pub basis: BasisKind,
    pub alphas: Vec<f64>,
    pub r: f64,
    pub dim: usize,
    pub n_per_dim: usize,
    pub entries: DMatrix<f64>,
}

/// Entries are r^α times the unscaled matrix on the standard nodes; the
/// physical collocation points are nodes/r. Dumps carry this tag so the
/// alternative reading of the scaled-node display stays reproducible.
pub const SCALING_CONVENTION: &str = "physical-points-nodes-over-r";

impl FracDiffMatrix {
    /// Total system size N^dim.
    pub fn size(&self) -> usize {
        self.n_per_dim.pow(self.dim as u32)
    }

    fn check_finite(self) -> Result<FracDiffMatrix> {
        if self.entries.iter().all(|v| v.is_finite()) {
            Ok(self)
        } else {
            Err(Error::Numeric("assembled matrix has non-finite entries".into()))
        }
    }
}

fn validate_scaling(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("scaling factor must be > 0, got {r}")))
    }
}

/// (−Δ)^{α/2} H̃_n evaluated at z (closed form, a single ₁F₁).
pub fn frac_overscaled_entry(n: usize, alpha: FracOrder, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain("entry argument must be finite".into()));
    }
    Ok(entry1d::overscaled_entry_dd(n, alpha.value(), z)?.to_f64())
}

/// Real i-stripped inverse-transform kernel F_k(x) for the normalized basis;
/// odd k carries the parity factor restored during column assembly.
pub fn frac_normalized_kernel(k: usize, alpha: FracOrder, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("kernel argument must be finite".into()));
    }
    Ok(entry1d::normalized_kernel_dd(k, alpha.value(), x)?.to_f64())
}

/// (−Δ)^{α/2} Ĥ_n evaluated at z (kernel sum over the monomial table).
pub fn frac_normalized_apply(n: usize, alpha: FracOrder, z: f64) -> Result<f64> {
    if n >= crate::specfun::MONOMIAL_TABLE_MAX {
        return Err(Error::Domain(format!(
            "normalized-basis index capped at {}",
            crate::specfun::MONOMIAL_TABLE_MAX - 1
        )));
    }
    let ahat = monomial_coeffs_dd(n + 1);
    Ok(entry1d::normalized_apply_dd(n, alpha.value(), z, &ahat)?.to_f64())
}

/// Over-scaled 1-D differentiation matrix, scaled entries r^α D(α) on the
/// standard nodes.
pub fn dm_overscaled_1d(n: usize, alpha: FracOrder, r: f64) -> Result<FracDiffMatrix> {
    dm_overscaled_1d_with(n, alpha, r, AssemblyPath::DirectSeries)
}

pub fn dm_overscaled_1d_with(
    n: usize,
    alpha: FracOrder,
    r: f64,
    path: AssemblyPath,
) -> Result<FracDiffMatrix> {
    if n == 0 || n > MAX_N_OVERSCALED_1D {
        return Err(Error::Usage(format!(
            "over-scaled 1-D size must be in 1..={MAX_N_OVERSCALED_1D}, got {n}"
        )));
    }
    validate_scaling(r)?;
    let rule = gauss_hermite(n)?;
    let ra = r.powf(alpha.value());
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for (i, &z) in rule.nodes().iter().enumerate() {
        match path {
            AssemblyPath::DirectSeries => {
                for j in 0..n {
                    let v = entry1d::overscaled_entry_dd(j, alpha.value(), z)
                        .map_err(|e| e.at_entry(i, j))?;
                    entries[(i, j)] = ra * v.to_f64();
                }
            }
            AssemblyPath::Recurrence => {
                let col = entry1d::overscaled_column_recurrence(n, alpha, z)
                    .map_err(|e| e.at_entry(i, 0))?;
                for (j, v) in col.into_iter().enumerate() {
                    entries[(i, j)] = ra * v;
                }
            }
        }
    }
    FracDiffMatrix {
        basis: BasisKind::Overscaled,
        alphas: vec![alpha.value()],
        r,
        dim: 1,
        n_per_dim: n,
        entries,
    }
    .check_finite()
}

/// Normalized-basis 1-D differentiation matrix (monomial-expansion route,
/// capped by the coefficient table).
pub fn dm_normalized_1d(n: usize, alpha: FracOrder, r: f64) -> Result<FracDiffMatrix> {
    dm_normalized_1d_with(n, alpha, r, AssemblyPath::DirectSeries)
}

pub fn dm_normalized_1d_with(
    n: usize,
    alpha: FracOrder,
    r: f64,
    path: AssemblyPath,
) -> Result<FracDiffMatrix> {
    if n == 0 || n > MAX_N_NORMALIZED_1D {
        return Err(Error::Usage(format!(
            "normalized 1-D size must be in 1..={MAX_N_NORMALIZED_1D}, got {n}"
        )));
    }
    validate_scaling(r)?;
    let rule = gauss_hermite(n)?;
    let ra = r.powf(alpha.value());
    let mut entries = DMatrix::<f64>::zeros(n, n);
    match path {
        AssemblyPath::DirectSeries => {
            let ahat = monomial_coeffs_dd(n);
            let mut kernels: Vec<Dd> = vec![crate::dd::DD_ZERO; n];
            for (m, &z) in rule.nodes().iter().enumerate() {
                for (k, slot) in kernels.iter_mut().enumerate() {
                    *slot = entry1d::normalized_kernel_dd(k, alpha.value(), z)
                        .map_err(|e| e.at_entry(m, k))?;
                }
                for col in 0..n {
                    let mut acc = crate::dd::DD_ZERO;
                    let mut k = col % 2;
                    while k <= col {
                        acc = acc.add(ahat[col][k].mul(kernels[k]));
                        k += 2;
                    }
                    entries[(m, col)] = ra * entry1d::normalized_sign(col) * acc.to_f64();
                }
            }
        }
        AssemblyPath::Recurrence => {
            let ahat = crate::specfun::monomial_coeffs(n)?;
            for (m, &z) in rule.nodes().iter().enumerate() {
                let kernels = entry1d::normalized_kernels_recurrence(n, alpha, z)
                    .map_err(|e| e.at_entry(m, 0))?;
                for col in 0..n {
                    let mut acc = 0.0;
                    let mut k = col % 2;
                    while k <= col {
                        acc += ahat.coeff(col, k) * kernels[k];
                        k += 2;
                    }
                    entries[(m, col)] = ra * entry1d::normalized_sign(col) * acc;
                }
            }
        }
    }
    FracDiffMatrix {
        basis: BasisKind::Normalized,
        alphas: vec![alpha.value()],
        r,
        dim: 1,
        n_per_dim: n,
        entries,
    }
    .check_finite()
}

/// Normalized-basis 1-D matrix assembled by composite Gauss-Legendre
/// quadrature of the transform representation. Slower prefactor-free route
/// that stays accurate at sizes far beyond the monomial-table cap; the
/// eigenvalue solver runs on it.
pub fn dm_normalized_1d_quadrature(n: usize, alpha: FracOrder) -> Result<FracDiffMatrix> {
    if n == 0 || n > MAX_N_QUADRATURE_1D {
        return Err(Error::Usage(format!(
            "quadrature-route size must be in 1..={MAX_N_QUADRATURE_1D}, got {n}"
        )));
    }
    let rule = gauss_hermite(n)?;
    let width = if n > 300 { 0.125 } else { 0.25 };
    let (xi, wq) = oracle::gl_panels(40.0, 16, width);
    let alpha = alpha.value();
    // kernel weights and basis values on the frequency grid
    let ker: Vec<f64> = xi
        .iter()
        .zip(&wq)
        .map(|(&q, &w)| w * q.powf(alpha))
        .collect();
    let h_cols: Vec<Vec<f64>> = xi
        .iter()
        .map(|&q| hermite_seq(HermiteKind::Normalized, n - 1, q))
        .collect();
    let pref = 2.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for (i, &x) in rule.nodes().iter().enumerate() {
        let cosv: Vec<f64> = xi.iter().map(|&q| (x * q).cos()).collect();
        let sinv: Vec<f64> = xi.iter().map(|&q| (x * q).sin()).collect();
        for col in 0..n {
            let trig = if col % 2 == 0 { &cosv } else { &sinv };
            let mut acc = 0.0;
            for q in 0..xi.len() {
                acc += ker[q] * h_cols[q][col] * trig[q];
            }
            entries[(i, col)] = pref * entry1d::normalized_sign(col) * acc;
        }
    }
    FracDiffMatrix {
        basis: BasisKind::Normalized,
        alphas: vec![alpha],
        r: 1.0,
        dim: 1,
        n_per_dim: n,
        entries,
    }
    .check_finite()
}

/// Coefficient matrix B of the Lagrange cardinals in the normalized basis:
/// B(k, j) = b_k^j = Ĥ_k(x_j) ŵ_j / √π; satisfies the cardinality relation
/// Σ_k b_k^j Ĥ_k(x_i) = δ_ij.
pub fn lagrange_synthesis_matrix(rule: &GaussHermiteRule) -> DMatrix<f64> {
    let n = rule.n();
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    let mut b = DMatrix::<f64>::zeros(n, n);
    for (j, (&x, &wf)) in rule
        .nodes()
        .iter()
        .zip(rule.weights_function())
        .enumerate()
    {
        let h = hermite_seq(HermiteKind::Normalized, n - 1, x);
        for k in 0..n {
            b[(k, j)] = inv_sqrt_pi * h[k] * wf;
        }
    }
    b
}

/// Lagrange-basis 1-D matrix D^L = D̂ · B.
pub fn dm_lagrange_1d(n: usize, alpha: FracOrder) -> Result<FracDiffMatrix> {
    let dhat = dm_normalized_1d(n, alpha, 1.0)?;
    let rule = gauss_hermite(n)?;
    let b = lagrange_synthesis_matrix(&rule);
    FracDiffMatrix {
        basis: BasisKind::Lagrange,
        alphas: vec![alpha.value()],
        r: 1.0,
        dim: 1,
        n_per_dim: n,
        entries: &dhat.entries * b,
    }
    .check_finite()
}

/// Over-scaled 2-D tensor matrix (N² × N², row-major node/basis pairs).
pub fn dm_overscaled_2d(n: usize, alpha: FracOrder) -> Result<FracDiffMatrix> {
    if n == 0 || n > MAX_N_OVERSCALED_2D {
        return Err(Error::Usage(format!(
            "over-scaled 2-D size must be in 1..={MAX_N_OVERSCALED_2D}, got {n}"
        )));
    }
    let rule = gauss_hermite(n)?;
    let entries = entry2d::assemble_overscaled_2d(rule.nodes(), n, alpha.value())?;
    FracDiffMatrix {
        basis: BasisKind::Overscaled,
        alphas: vec![alpha.value()],
        r: 1.0,
        dim: 2,
        n_per_dim: n,
        entries,
    }
    .check_finite()
}

/// Normalized-basis 2-D tensor matrix.
pub fn dm_normalized_2d(n: usize, alpha: FracOrder) -> Result<FracDiffMatrix> {
    if n == 0 || n > MAX_N_NORMALIZED_2D {
        return Err(Error::Usage(format!(
            "normalized 2-D size must be in 1..={MAX_N_NORMALIZED_2D}, got {n}"
        )));
    }
    let rule = gauss_hermite(n)?;
    let entries = entry2d::assemble_normalized_2d(rule.nodes(), n, alpha.value())?;
    FracDiffMatrix {
        basis: BasisKind::Normalized,
        alphas: vec![alpha.value()],
        r: 1.0,
        dim: 2,
        n_per_dim: n,
        entries,
    }
    .check_finite()
}

/// Multi-term operator Σ_j (−Δ)^{α_j/2}: elementwise sum of the single-order
/// matrices, summed in ascending α for bit reproducibility.
pub fn dm_multiterm(
    n: usize,
    alphas: &[FracOrder],
    basis: BasisKind,
    r: f64,
) -> Result<FracDiffMatrix> {
    if alphas.is_empty() || alphas.len() > 16 {
        return Err(Error::Usage(format!(
            "multi-term operator takes 1..=16 orders, got {}",
            alphas.len()
        )));
    }
    let mut sorted: Vec<FracOrder> = alphas.to_vec();
    sorted.sort_by(|a, b| a.value().partial_cmp(&b.value()).unwrap());
    let build = |alpha: FracOrder| -> Result<FracDiffMatrix> {
        match basis {
            BasisKind::Overscaled => dm_overscaled_1d(n, alpha, r),
            BasisKind::Normalized => dm_normalized_1d(n, alpha, r),
            BasisKind::Lagrange => {
                if r != 1.0 {
                    return Err(Error::Usage(
                        "the Lagrange basis is built on the unscaled nodes (r = 1)".into(),
                    ));
                }
                dm_lagrange_1d(n, alpha)
            }
        }
    };
    let mut acc = build(sorted[0])?;
    for &a in &sorted[1..] {
        let next = build(a)?;
        acc.entries += &next.entries;
        acc.alphas.push(a.value());
    }
    Ok(acc)
}

/// 2-D multi-term sum over the over-scaled tensor basis.
pub fn dm_multiterm_2d(n: usize, alphas: &[FracOrder], basis: BasisKind) -> Result<FracDiffMatrix> {
    if alphas.is_empty() || alphas.len() > 16 {
        return Err(Error::Usage(format!(
            "multi-term operator takes 1..=16 orders, got {}",
            alphas.len()
        )));
    }
    let mut sorted: Vec<FracOrder> = alphas.to_vec();
    sorted.sort_by(|a, b| a.value().partial_cmp(&b.value()).unwrap());
    let build = |alpha: FracOrder| -> Result<FracDiffMatrix> {
        match basis {
            BasisKind::Overscaled => dm_overscaled_2d(n, alpha),
            BasisKind::Normalized => dm_normalized_2d(n, alpha),
            BasisKind::Lagrange => Err(Error::Usage(
                "2-D assembly covers the modal bases only".into(),
            )),
        }
    };
    let mut acc = build(sorted[0])?;
    for &a in &sorted[1..] {
        let next = build(a)?;
        acc.entries += &next.entries;
        acc.alphas.push(a.value());
    }
    Ok(acc)
}
