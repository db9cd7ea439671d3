//! Manufactured-solution right-hand sides: project the exact solution onto
//! the basis, apply the fractional operator analytically per basis function
//! (closed-form entries), add the reaction term sampled pointwise.

use std::sync::Arc;

use crate::basis::BasisKind;
use crate::dd::{Cdd, Dd, CDD_ZERO, DD_ZERO};
use crate::error::Result;
use crate::fracdm::entry1d::{normalized_kernel_dd, normalized_sign, overscaled_entry_dd};
use crate::fracdm::entry2d::{
    harmonic_kernel, harmonic_overscaled, node_powers_at, radial_table_at, HarmonicCoeffs,
};
use crate::fracdm::FracOrder;
use crate::quadrature::{project, project_2d};
use crate::solve::Nonlinearity;
use crate::specfun::monomial_coeffs_dd;

/// Coefficients below this fraction of the largest are quadrature noise;
/// zeroing them keeps the (severely ill-conditioned) over-scaled solves from
/// amplifying artifacts.
const PROJECTION_NOISE_FLOOR: f64 = 1e-14;
/// Tail coefficients above this fraction flag the synthesis under-resolved.
const TAIL_WARN_LEVEL: f64 = 1e-10;

enum SynthKind {
    /// Over-scaled: one closed-form entry per retained coefficient.
    Overscaled { coeffs: Vec<(usize, f64)> },
    /// Normalized (and Lagrange, which shares the space): the operator image
    /// is a kernel combination with premixed weights
    /// w_k = Σ_n c_n (±1)_n â_{n,k}.
    Normalized { weights: Vec<Dd> },
}

/// Sampler for g = Σ_j (−Δ)^{α_j/2} u + γ f(u), evaluable anywhere.
pub struct SynthRhs {
    kind: SynthKind,
    alphas: Vec<FracOrder>,
    r: f64,
    gamma: f64,
    nonlinearity: Nonlinearity,
    exact: Arc<dyn Fn(f64) -> f64>,
    /// Projection tail exceeded the resolution threshold.
    pub under_resolved: bool,
}

fn floor_and_flag(coeffs: &mut [f64]) -> bool {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return false;
    }
    let tail = coeffs.len().saturating_sub(3);
    let under = coeffs[tail..]
        .iter()
        .any(|c| c.abs() > TAIL_WARN_LEVEL * max);
    for c in coeffs.iter_mut() {
        if c.abs() < PROJECTION_NOISE_FLOOR * max {
            *c = 0.0;
        }
    }
    under
}

/// Build the right-hand-side sampler from an exact solution expanded in m
/// basis functions.
pub fn synth_rhs<F: Fn(f64) -> f64 + 'static>(
    exact: F,
    alphas: &[FracOrder],
    gamma: f64,
    nonlinearity: &Nonlinearity,
    basis: BasisKind,
    r: f64,
    m: usize,
) -> Result<SynthRhs> {
    let project_basis = match basis {
        BasisKind::Lagrange => BasisKind::Normalized,
        other => other,
    };
    let mut coeffs = project(&exact, project_basis, m, r)?;
    let under_resolved = floor_and_flag(&mut coeffs);
    let kind = match project_basis {
        BasisKind::Overscaled => SynthKind::Overscaled {
            coeffs: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(|(n, &c)| (n, c))
                .collect(),
        },
        _ => {
            let ahat = monomial_coeffs_dd(m);
            let mut weights = vec![DD_ZERO; m];
            for (n, &c) in coeffs.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let s = c * normalized_sign(n);
                let mut k = n % 2;
                while k <= n {
                    weights[k] = weights[k].add(ahat[n][k].mul_f(s));
                    k += 2;
                }
            }
            SynthKind::Normalized { weights }
        }
    };
    Ok(SynthRhs {
        kind,
        alphas: alphas.to_vec(),
        r,
        gamma,
        nonlinearity: nonlinearity.clone(),
        exact: Arc::new(exact),
        under_resolved,
    })
}

impl SynthRhs {
    pub fn eval(&self, x: f64) -> f64 {
        let z = self.r * x;
        let mut total = 0.0;
        for &alpha in &self.alphas {
            let ra = self.r.powf(alpha.value());
            let mut acc = DD_ZERO;
            match &self.kind {
                SynthKind::Overscaled { coeffs } => {
                    for &(n, c) in coeffs {
                        let e = overscaled_entry_dd(n, alpha.value(), z)
                            .expect("entry evaluation within validated range");
                        acc = acc.add(e.mul_f(c));
                    }
                }
                SynthKind::Normalized { weights } => {
                    for (k, w) in weights.iter().enumerate() {
                        if w.hi == 0.0 && w.lo == 0.0 {
                            continue;
                        }
                        let kern = normalized_kernel_dd(k, alpha.value(), z)
                            .expect("kernel evaluation within validated range");
                        acc = acc.add(w.mul(kern));
                    }
                }
            }
            total += ra * acc.to_f64();
        }
        total + self.gamma * self.nonlinearity.eval((self.exact)(x))
    }
}

/// 2-D sampler: retained harmonic tables with complex weights. Over-scaled
/// items carry one weighted table per basis pair; normalized items premix
/// the monomial coefficients and transform phases into the weights.
pub struct SynthRhs2d {
    items: Vec<(HarmonicCoeffs, Cdd)>,
    jmax: usize,
    beta_half: bool,
    alphas: Vec<FracOrder>,
    r: f64,
    gamma: f64,
    nonlinearity: Nonlinearity,
    exact: Arc<dyn Fn(f64, f64) -> f64>,
    pub under_resolved: bool,
}

pub fn synth_rhs_2d<F: Fn(f64, f64) -> f64 + 'static>(
    exact: F,
    alphas: &[FracOrder],
    gamma: f64,
    nonlinearity: &Nonlinearity,
    basis: BasisKind,
    r: f64,
    m: usize,
) -> Result<SynthRhs2d> {
    let mut coeffs = project_2d(&exact, basis, m, r)?;
    let under_resolved = floor_and_flag(&mut coeffs);
    let mut items: Vec<(HarmonicCoeffs, Cdd)> = Vec::new();
    let mut jmax = 0usize;
    let beta_half = basis == BasisKind::Normalized;
    match basis {
        BasisKind::Overscaled => {
            for p in 0..m {
                for q in 0..m {
                    let c = coeffs[p * m + q];
                    if c == 0.0 {
                        continue;
                    }
                    jmax = jmax.max(p + q);
                    items.push((
                        harmonic_overscaled(p, q)?,
                        Cdd::new(Dd::from(c), DD_ZERO),
                    ));
                }
            }
        }
        _ => {
            // premix: Σ_{n,m'} c (−i)^{n+m'} â_{n,k} â_{m',l} per kernel (k,l)
            let ahat = monomial_coeffs_dd(m);
            let mut weights = vec![CDD_ZERO; m * m];
            for nb in 0..m {
                for mb in 0..m {
                    let c = coeffs[nb * m + mb];
                    if c == 0.0 {
                        continue;
                    }
                    let mut k = nb % 2;
                    while k <= nb {
                        let ank = ahat[nb][k].mul_f(c);
                        let mut l = mb % 2;
                        while l <= mb {
                            let w = Cdd::new(ank.mul(ahat[mb][l]), DD_ZERO)
                                .mul_i_pow(-((nb + mb) as i64));
                            weights[k * m + l] = weights[k * m + l].add(w);
                            l += 2;
                        }
                        k += 2;
                    }
                }
            }
            for k in 0..m {
                for l in 0..m {
                    let w = weights[k * m + l];
                    if w.re.hi == 0.0 && w.re.lo == 0.0 && w.im.hi == 0.0 && w.im.lo == 0.0 {
                        continue;
                    }
                    jmax = jmax.max(k + l);
                    items.push((harmonic_kernel(k, l)?, w));
                }
            }
        }
    }
    Ok(SynthRhs2d {
        items,
        jmax,
        beta_half,
        alphas: alphas.to_vec(),
        r,
        gamma,
        nonlinearity: nonlinearity.clone(),
        exact: Arc::new(exact),
        under_resolved,
    })
}

impl SynthRhs2d {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (zx, zy) = (self.r * x, self.r * y);
        let zpow = node_powers_at(zx, zy, self.jmax);
        let mut total = 0.0;
        for &alpha in &self.alphas {
            let ra = self.r.powf(alpha.value());
            let table = radial_table_at(self.jmax, alpha.value(), zx * zx + zy * zy, self.beta_half)
                .expect("radial table within validated range");
            let mut acc = DD_ZERO;
            for (hc, w) in &self.items {
                if (hc.jx() % 2 == 1 && zx == 0.0) || (hc.jy() % 2 == 1 && zy == 0.0) {
                    continue;
                }
                acc = acc.add(hc.eval(&zpow, &table).mul(*w).re);
            }
            total += ra * acc.to_f64();
        }
        total + self.gamma * self.nonlinearity.eval((self.exact)(x, y))
    }
}
