//! Independent Fourier-quadrature oracle for the closed-form entries.
//!
//! Evaluates (−Δ)^{α/2}φ_n by direct composite Gauss-Legendre quadrature of
//! the inverse transform, using only the known transforms of the basis
//! functions — never the ₁F₁ closed forms it is meant to check.

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::fracdm::FracOrder;
use crate::specfun::{hermite_eval, ln_gamma, HermiteKind};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                (p0, p1) = (p1, ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf);
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Composite panels on [0, xi_max]: geometric refinement toward the |ξ|^α
/// cusp at zero, then uniform panels of the given width.
pub(crate) fn gl_panels(xi_max: f64, pts: usize, width: f64) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = legendre_rule(pts);
    let mut edges = Vec::new();
    let mut e = 1.0f64;
    for _ in 0..30 {
        edges.push(e);
        e *= 0.5;
    }
    edges.push(0.0);
    edges.reverse();
    let mut e = 1.0 + width;
    while e < xi_max {
        edges.push(e);
        e += width;
    }
    edges.push(xi_max);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(mid + half * x);
            ws.push(half * w);
        }
    }
    (xs, ws)
}

fn validate(basis: BasisKind) -> Result<()> {
    if basis == BasisKind::Lagrange {
        return Err(Error::Usage(
            "the quadrature oracle works on the modal bases".into(),
        ));
    }
    Ok(())
}

/// ln of the over-scaled transform magnitude: |𝓕[H̃_n](ξ)| = ξⁿ e^{-ξ²/4}/(√2 √(2ⁿn!)).
fn overscaled_transform_ln_norm(n: usize) -> Result<f64> {
    Ok(0.5 * (n as f64 * std::f64::consts::LN_2 + ln_gamma(n as f64 + 1.0)?)
        + 0.5 * std::f64::consts::LN_2)
}

fn transform_value(basis: BasisKind, n: usize, ln_norm: f64, xi: f64) -> f64 {
    match basis {
        BasisKind::Overscaled => (n as f64 * xi.ln() - 0.25 * xi * xi - ln_norm).exp(),
        _ => hermite_eval(HermiteKind::Normalized, n, xi),
    }
}

fn apply_1d(basis: BasisKind, n: usize, alpha: f64, x: f64, width: f64) -> Result<f64> {
    let (xi, wq) = gl_panels(40.0, 16, width);
    let ln_norm = if basis == BasisKind::Overscaled {
        overscaled_transform_ln_norm(n)?
    } else {
        0.0
    };
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * 2.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = 0.0;
    for (&q, &w) in xi.iter().zip(&wq) {
        let g = transform_value(basis, n, ln_norm, q);
        let t = if n % 2 == 0 { (x * q).cos() } else { (x * q).sin() };
        acc += w * q.powf(alpha) * g * t;
    }
    Ok(pref * acc)
}

/// (−Δ)^{α/2}φ_n at x by direct quadrature of the transform representation,
/// with an internal resolution-doubling self-check (target 1e-9 absolute).
pub fn oracle_frac_apply(basis: BasisKind, n: usize, alpha: FracOrder, x: f64) -> Result<f64> {
    validate(basis)?;
    if x.abs() > 20.0 || n > 64 {
        return Err(Error::Usage(format!(
            "oracle validated for |x| <= 20 and n <= 64, got n={n}, x={x}"
        )));
    }
    let coarse = apply_1d(basis, n, alpha.value(), x, 0.25)?;
    let fine = apply_1d(basis, n, alpha.value(), x, 0.125)?;
    if (coarse - fine).abs() > 1e-9 * (1.0 + fine.abs()) {
        return Err(Error::Accuracy {
            context: format!(
                "oracle self-check failed for n={n}, alpha={}, x={x}: {coarse} vs {fine}",
                alpha.value()
            ),
            partial: fine,
        });
    }
    Ok(fine)
}

#[allow(clippy::too_many_arguments)]
fn apply_2d(
    basis: BasisKind,
    n: usize,
    m: usize,
    alpha: f64,
    x: f64,
    y: f64,
    width: f64,
    pts: usize,
) -> Result<f64> {
    let (xi, wq) = gl_panels(30.0, pts, width);
    let (ln_n, ln_m) = if basis == BasisKind::Overscaled {
        (
            overscaled_transform_ln_norm(n)?,
            overscaled_transform_ln_norm(m)?,
        )
    } else {
        (0.0, 0.0)
    };
    let gx: Vec<f64> = xi
        .iter()
        .map(|&q| {
            let g = transform_value(basis, n, ln_n, q);
            g * if n % 2 == 0 { (x * q).cos() } else { (x * q).sin() }
        })
        .collect();
    let gy: Vec<f64> = xi
        .iter()
        .map(|&q| {
            let g = transform_value(basis, m, ln_m, q);
            g * if m % 2 == 0 { (y * q).cos() } else { (y * q).sin() }
        })
        .collect();
    let sign = if ((n / 2 + m / 2) % 2) == 0 { 1.0 } else { -1.0 };
    let pref = sign * 2.0 / std::f64::consts::PI;
    let mut acc = 0.0;
    for (i, &wi) in wq.iter().enumerate() {
        let mut inner = 0.0;
        for (j, &wj) in wq.iter().enumerate() {
            inner += wj * (xi[i] * xi[i] + xi[j] * xi[j]).powf(0.5 * alpha) * gy[j];
        }
        acc += wi * gx[i] * inner;
    }
    Ok(pref * acc)
}

/// 2-D tensor-grid Fourier oracle for (−Δ)^{α/2}[φ_n ⊗ φ_m](x, y).
pub fn oracle_frac_apply_2d(
    basis: BasisKind,
    n: usize,
    m: usize,
    alpha: FracOrder,
    x: f64,
    y: f64,
) -> Result<f64> {
    validate(basis)?;
    if x.abs() > 20.0 || y.abs() > 20.0 || n > 48 || m > 48 {
        return Err(Error::Usage(format!(
            "2-D oracle validated for |x|,|y| <= 20 and n,m <= 48, got ({n},{m}) at ({x},{y})"
        )));
    }
    let coarse = apply_2d(basis, n, m, alpha.value(), x, y, 0.5, 12)?;
    let fine = apply_2d(basis, n, m, alpha.value(), x, y, 0.3, 14)?;
    if (coarse - fine).abs() > 1e-7 * (1.0 + fine.abs()) {
        return Err(Error::Accuracy {
            context: format!("2-D oracle self-check failed for ({n},{m}) at ({x},{y})"),
            partial: fine,
        });
    }
    Ok(fine)
}
