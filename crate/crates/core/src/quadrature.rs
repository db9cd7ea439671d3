//! Gauss-Hermite rules, weighted/maximum error norms, and projection of
//! samplable functions onto the Hermite-type bases.

use nalgebra::DMatrix;

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::specfun::{hermite_seq, HermiteKind};

pub const MAX_RULE_SIZE: usize = 512;

/// Nodes (roots of H_N) plus both weight families: the classical weights for
/// ∫ f e^{-x²} and the Hermite-function weights ŵ_j = √π/(N Ĥ²_{N-1}(x_j)).
#[derive(Clone, Debug)]
pub struct GaussHermiteRule {
    n: usize,
    nodes: Vec<f64>,
    weights_classical: Vec<f64>,
    weights_function: Vec<f64>,
}

impl GaussHermiteRule {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending, symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights_classical(&self) -> &[f64] {
        &self.weights_classical
    }

    pub fn weights_function(&self) -> &[f64] {
        &self.weights_function
    }

    /// Σ_j w_j f(x_j) ≈ ∫ f e^{-x²}.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights_classical)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Build the N-point rule. Nodes are eigenvalues of the Jacobi matrix
/// (zero diagonal, off-diagonal √(k/2), Golub-Welsch), symmetrized by
/// averaging ± pairs and polished by one Newton step on H_N.
pub fn gauss_hermite(n: usize) -> Result<GaussHermiteRule> {
    if n == 0 || n > MAX_RULE_SIZE {
        return Err(Error::Usage(format!(
            "rule size must be in 1..={MAX_RULE_SIZE}, got {n}"
        )));
    }
    let jacobi = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i + 1 == j {
            (j as f64 / 2.0).sqrt()
        } else if j + 1 == i {
            (i as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    if nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric(
            "Jacobi eigenvalue iteration produced non-finite nodes".into(),
        ));
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    symmetrize(&mut nodes);
    // one Newton step: H_N / H_N' = Ĥ_N / (√(2N) Ĥ_{N-1})
    let root = (2.0 * n as f64).sqrt();
    for x in nodes.iter_mut() {
        let h = hermite_seq(HermiteKind::Normalized, n, *x);
        *x -= h[n] / (root * h[n - 1]);
    }
    symmetrize(&mut nodes);

    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut weights_function = Vec::with_capacity(n);
    let mut weights_classical = Vec::with_capacity(n);
    for &x in &nodes {
        let h = hermite_seq(HermiteKind::Normalized, n - 1, x);
        let wf = sqrt_pi / (n as f64 * h[n - 1] * h[n - 1]);
        weights_function.push(wf);
        weights_classical.push(wf * (-x * x).exp());
    }
    Ok(GaussHermiteRule {
        n,
        nodes,
        weights_classical,
        weights_function,
    })
}

fn symmetrize(nodes: &mut [f64]) {
    let n = nodes.len();
    for j in 0..n / 2 {
        let v = 0.5 * (nodes[n - 1 - j] - nodes[j]);
        nodes[j] = -v;
        nodes[n - 1 - j] = v;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
}

/// Squared weighted norm and max nodal error of an approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorPair {
    /// ‖u - u_N‖²_ω by quadrature (ω = e^{x²} for the over-scaled basis,
    /// ω = 1 otherwise).
    pub e_w: f64,
    /// max_j |u(x_j/r) - u_N(x_j/r)| over the scaled grid.
    pub e_m: f64,
}

/// Compare `exact` and `approx` on the rule's grid scaled by 1/r.
///
/// The weight factor for the over-scaled basis is applied as
/// ŵ_j (e^{x_j²/2} err_j)², which equals w_j e^{2x_j²} err_j² without
/// overflowing for rules up to the size cap. Non-finite samples yield
/// infinite norms.
pub fn error_norms<F, G>(
    exact: F,
    approx: G,
    rule: &GaussHermiteRule,
    weight_kind: BasisKind,
    r: f64,
) -> ErrorPair
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut e_w = 0.0;
    let mut e_m: f64 = 0.0;
    for (&x, &wf) in rule.nodes().iter().zip(rule.weights_function()) {
        let p = x / r;
        let err = exact(p) - approx(p);
        if !err.is_finite() {
            return ErrorPair {
                e_w: f64::INFINITY,
                e_m: f64::INFINITY,
            };
        }
        e_m = e_m.max(err.abs());
        let t = match weight_kind {
            BasisKind::Overscaled => (0.5 * x * x).exp() * err,
            BasisKind::Normalized | BasisKind::Lagrange => err,
        };
        e_w += wf * t * t;
    }
    ErrorPair { e_w, e_m }
}

/// Tensor-grid version of [`error_norms`] for two-dimensional solves.
pub fn error_norms_2d<F, G>(
    exact: F,
    approx: G,
    rule: &GaussHermiteRule,
    weight_kind: BasisKind,
    r: f64,
) -> ErrorPair
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    let mut e_w = 0.0;
    let mut e_m: f64 = 0.0;
    for (&x, &wx) in rule.nodes().iter().zip(rule.weights_function()) {
        for (&y, &wy) in rule.nodes().iter().zip(rule.weights_function()) {
            let (px, py) = (x / r, y / r);
            let err = exact(px, py) - approx(px, py);
            if !err.is_finite() {
                return ErrorPair {
                    e_w: f64::INFINITY,
                    e_m: f64::INFINITY,
                };
            }
            e_m = e_m.max(err.abs());
            let t = match weight_kind {
                BasisKind::Overscaled => (0.5 * (x * x + y * y)).exp() * err,
                BasisKind::Normalized | BasisKind::Lagrange => err,
            };
            e_w += wx * wy * t * t;
        }
    }
    ErrorPair { e_w, e_m }
}

/// Expansion coefficients of `f` in the chosen basis (argument scaled by r)
/// by discrete orthogonality on the m-point rule:
/// c_n = (1/√π) Σ_j ŵ_j' f(x_j/r) φ_n(x_j).
///
/// For the Lagrange basis the coefficients are the nodal samples themselves.
pub fn project<F: Fn(f64) -> f64>(
    f: F,
    basis: BasisKind,
    m: usize,
    r: f64,
) -> Result<Vec<f64>> {
    let rule = gauss_hermite(m)?;
    let samples: Vec<f64> = rule.nodes().iter().map(|&x| f(x / r)).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("projection samples are not finite".into()));
    }
    project_samples(&samples, basis, &rule)
}

pub(crate) fn project_samples(
    samples: &[f64],
    basis: BasisKind,
    rule: &GaussHermiteRule,
) -> Result<Vec<f64>> {
    let m = rule.n();
    if basis == BasisKind::Lagrange {
        return Ok(samples.to_vec());
    }
    // Over-scaled coefficients equal normalized-function projections of
    // e^{x²/2} f: the e^{x²} orthogonality weight folds into the samples.
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    let mut coeffs = vec![0.0; m];
    for (j, (&x, &wf)) in rule.nodes().iter().zip(rule.weights_function()).enumerate() {
        let s = match basis {
            BasisKind::Overscaled => (0.5 * x * x).exp() * samples[j],
            _ => samples[j],
        };
        let h = hermite_seq(HermiteKind::Normalized, m - 1, x);
        let ws = inv_sqrt_pi * wf * s;
        for (n, hn) in h.iter().enumerate() {
            coeffs[n] += ws * hn;
        }
    }
    Ok(coeffs)
}

/// 2-D tensor projection; coefficients row-major (index p·m + q).
pub fn project_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    basis: BasisKind,
    m: usize,
    r: f64,
) -> Result<Vec<f64>> {
    if basis == BasisKind::Lagrange {
        return Err(Error::Usage(
            "2-D projection works on the modal bases".into(),
        ));
    }
    let rule = gauss_hermite(m)?;
    let inv_pi = 1.0 / std::f64::consts::PI;
    let h_all: Vec<Vec<f64>> = rule
        .nodes()
        .iter()
        .map(|&x| hermite_seq(HermiteKind::Normalized, m - 1, x))
        .collect();
    let mut coeffs = vec![0.0; m * m];
    for (i, (&x, &wx)) in rule.nodes().iter().zip(rule.weights_function()).enumerate() {
        for (j, (&y, &wy)) in rule.nodes().iter().zip(rule.weights_function()).enumerate() {
            let mut s = f(x / r, y / r);
            if !s.is_finite() {
                return Err(Error::Data("projection samples are not finite".into()));
            }
            if basis == BasisKind::Overscaled {
                s *= (0.5 * (x * x + y * y)).exp();
            }
            let ws = inv_pi * wx * wy * s;
            for p in 0..m {
                let hp = h_all[i][p] * ws;
                for q in 0..m {
                    coeffs[p * m + q] += hp * h_all[j][q];
                }
            }
        }
    }
    Ok(coeffs)
}
