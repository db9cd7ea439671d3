//! Two-dimensional tensor-basis entries.
//!
//! The transform of a tensor basis function is a bivariate monomial times a
//! Gaussian; pairing it with (ξ²+η²)^{α/2} couples the variables, so the
//! inverse transform expands the plane wave in integer angular harmonics
//! (finitely many for a monomial) and reduces each harmonic to a Hankel-type
//! radial integral with a single ₁F₁ closed form:
//!
//!   𝓕⁻¹[(ξ²+η²)^{α/2} ξ^j η^k e^{-βρ²}](x,y)
//!     = (1/2π) Σ_ν γ_ν i^{|ν|} (x ± iy)^{|ν|} R̃_{J,|ν|}(s²),   J = j+k,
//!
//! with γ_ν the binomial expansion of cos^j φ sin^k φ and
//! R̃_{J,a}(s²) = Γ(A)/(2^{a+1} β^A Γ(a+1)) ₁F₁(A, a+1; -s²/4β),
//! A = (α+J+a+2)/2. All phases are exact quadrant rotations; magnitudes run
//! in double-double.

use nalgebra::DMatrix;

use crate::dd::{hyp1f1_dd, Cdd, Dd, CDD_ZERO, DD_LN2, DD_ZERO};
use crate::error::Result;
use crate::specfun::monomial_coeffs_dd;

/// Harmonic coefficients of one (j, k) monomial pair: cp[a] multiplies
/// (x+iy)^a, cm[a] multiplies (x-iy)^a.
pub(crate) struct HarmonicCoeffs {
    j: usize,
    k: usize,
    cp: Vec<Cdd>,
    cm: Vec<Cdd>,
}

impl HarmonicCoeffs {
    /// Basis/monomial index along x.
    pub fn jx(&self) -> usize {
        self.j
    }

    /// Basis/monomial index along y.
    pub fn jy(&self) -> usize {
        self.k
    }

    pub fn eval(&self, zpow: &[Cdd], table: &[Vec<Dd>]) -> Cdd {
        eval_harmonics(self, zpow, table)
    }
}

/// Coefficients for one over-scaled tensor pair with the basis weight and
/// the (−i)^{p+q} phase folded in.
pub(crate) fn harmonic_overscaled(p: usize, q: usize) -> Result<HarmonicCoeffs> {
    let ln_w = DD_LN2
        .mul_f(-(1.0 + 0.5 * (p + q) as f64))
        .sub(Dd::from(p as f64 + 1.0).lgamma()?.mul_f(0.5))
        .sub(Dd::from(q as f64 + 1.0).lgamma()?.mul_f(0.5));
    harmonic_coeffs(p, q, (p + q) as i64, Some(ln_w))
}

/// Raw kernel coefficients for one monomial pair (no weight, no phase).
pub(crate) fn harmonic_kernel(k: usize, l: usize) -> Result<HarmonicCoeffs> {
    harmonic_coeffs(k, l, 0, None)
}

/// Complex node powers for external evaluators.
pub(crate) fn node_powers_at(x: f64, y: f64, amax: usize) -> Vec<Cdd> {
    node_powers(x, y, amax)
}

/// Radial table for external evaluators.
pub(crate) fn radial_table_at(
    jmax: usize,
    alpha: f64,
    s2: f64,
    beta_half: bool,
) -> Result<Vec<Vec<Dd>>> {
    radial_table(jmax, alpha, s2, beta_half)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Build the harmonic table for ξ^j η^k, folding an extra phase i^{-outer}
/// and an optional log-magnitude weight.
fn harmonic_coeffs(j: usize, k: usize, outer: i64, ln_weight: Option<Dd>) -> Result<HarmonicCoeffs> {
    let jj = j + k;
    let weight = match ln_weight {
        Some(lw) => lw.exp(),
        None => crate::dd::DD_ONE,
    };
    let mut cp = vec![CDD_ZERO; jj + 1];
    let mut cm = vec![CDD_ZERO; jj + 1];
    for u in 0..=j {
        let bj = binomial(j, u);
        for v in 0..=k {
            let nu = 2 * (u + v) as i64 - jj as i64;
            let a = nu.unsigned_abs() as usize;
            let c = Dd::from_u128(bj * binomial(k, v))
                .ldexp(-(jj as i32))
                .mul(weight);
            // total phase i^{a - k - outer} (-1)^{k-v}
            let mut q = (a as i64 - k as i64 - outer).rem_euclid(4);
            if (k - v) % 2 == 1 {
                q = (q + 2) % 4;
            }
            let target = if nu >= 0 { &mut cp[a] } else { &mut cm[a] };
            *target = target.add(rotated(c, q));
        }
    }
    Ok(HarmonicCoeffs { j, k, cp, cm })
}

fn rotated(c: Dd, quadrant: i64) -> Cdd {
    match quadrant {
        0 => Cdd::new(c, DD_ZERO),
        1 => Cdd::new(DD_ZERO, c),
        2 => Cdd::new(c.neg(), DD_ZERO),
        _ => Cdd::new(DD_ZERO, c.neg()),
    }
}

/// R̃_{J,a}(s²) for all J ≤ jmax, a ≤ J with matching parity.
/// `beta_half` selects β = ½ (normalized basis) over β = ¼ (over-scaled).
fn radial_table(jmax: usize, alpha: f64, s2: f64, beta_half: bool) -> Result<Vec<Vec<Dd>>> {
    let arg = if beta_half { -0.5 * s2 } else { -s2 };
    let mut table = Vec::with_capacity(jmax + 1);
    for jj in 0..=jmax {
        let mut row = vec![DD_ZERO; jj + 1];
        let mut a = jj % 2;
        while a <= jj {
            let big_a = Dd::from(alpha).add_f((jj + a + 2) as f64).mul_f(0.5);
            let two_pow = if beta_half {
                big_a.add_f(-(a as f64 + 1.0))
            } else {
                big_a.mul_f(2.0).add_f(-(a as f64 + 1.0))
            };
            let ln_pref = big_a
                .lgamma()?
                .sub(Dd::from(a as f64 + 1.0).lgamma()?)
                .add(two_pow.mul(DD_LN2));
            row[a] = ln_pref
                .exp()
                .mul(hyp1f1_dd(big_a, Dd::from(a as f64 + 1.0), arg)?);
            a += 2;
        }
        table.push(row);
    }
    Ok(table)
}

/// Complex node powers (x+iy)^a for a = 0..=amax.
fn node_powers(x: f64, y: f64, amax: usize) -> Vec<Cdd> {
    let z = Cdd::new(Dd::from(x), Dd::from(y));
    let mut out = Vec::with_capacity(amax + 1);
    out.push(Cdd::new(crate::dd::DD_ONE, DD_ZERO));
    for a in 0..amax {
        out.push(out[a].mul(z));
    }
    out
}

fn conj(c: Cdd) -> Cdd {
    Cdd::new(c.re, c.im.neg())
}

/// Σ_a (cp[a] Z^a + cm[a] Z̄^a) R̃_{J,a}.
fn eval_harmonics(hc: &HarmonicCoeffs, zpow: &[Cdd], table: &[Vec<Dd>]) -> Cdd {
    let jj = hc.j + hc.k;
    let row = &table[jj];
    let mut acc = CDD_ZERO;
    let mut a = jj % 2;
    while a <= jj {
        let term = hc.cp[a]
            .mul(zpow[a])
            .add(hc.cm[a].mul(conj(zpow[a])))
            .scale(row[a]);
        acc = acc.add(term);
        a += 2;
    }
    acc
}

/// Single over-scaled 2-D entry (−Δ)^{α/2}[H̃_p ⊗ H̃_q](x, y); the matrix
/// assembly amortizes the radial table, this is for arbitrary points.
#[cfg(test)]
pub(crate) fn overscaled_entry_2d(p: usize, q: usize, alpha: f64, x: f64, y: f64) -> Result<f64> {
    if (p % 2 == 1 && x == 0.0) || (q % 2 == 1 && y == 0.0) {
        return Ok(0.0);
    }
    let ln_w = DD_LN2
        .mul_f(-(1.0 + 0.5 * (p + q) as f64))
        .sub(Dd::from(p as f64 + 1.0).lgamma()?.mul_f(0.5))
        .sub(Dd::from(q as f64 + 1.0).lgamma()?.mul_f(0.5));
    let hc = harmonic_coeffs(p, q, (p + q) as i64, Some(ln_w))?;
    let table = radial_table(p + q, alpha, x * x + y * y, false)?;
    let zpow = node_powers(x, y, p + q);
    Ok(eval_harmonics(&hc, &zpow, &table).re.to_f64())
}

/// Single normalized-basis 2-D entry (−Δ)^{α/2}[Ĥ_n ⊗ Ĥ_m](x, y).
#[cfg(test)]
pub(crate) fn normalized_entry_2d(n: usize, m: usize, alpha: f64, x: f64, y: f64) -> Result<f64> {
    if (n % 2 == 1 && x == 0.0) || (m % 2 == 1 && y == 0.0) {
        return Ok(0.0);
    }
    let nmax = n.max(m);
    let ahat = monomial_coeffs_dd(nmax + 1);
    let jmax = n + m;
    let table = radial_table(jmax, alpha, x * x + y * y, true)?;
    let zpow = node_powers(x, y, jmax);
    let mut acc = CDD_ZERO;
    let mut k = n % 2;
    while k <= n {
        let ank = ahat[n][k];
        let mut l = m % 2;
        while l <= m {
            let hc = harmonic_coeffs(k, l, 0, None)?;
            acc = acc.add(eval_harmonics(&hc, &zpow, &table).scale(ank.mul(ahat[m][l])));
            l += 2;
        }
        k += 2;
    }
    Ok(acc.mul_i_pow(-((n + m) as i64)).re.to_f64())
}

/// Dense over-scaled 2-D matrix: entry ((i,j),(p,q)) =
/// (−Δ)^{α/2}[H̃_p ⊗ H̃_q](x_i, y_j). Rows with negative coordinates are
/// mirrored from their reflections using the columns' parity.
pub(crate) fn assemble_overscaled_2d(
    nodes: &[f64],
    n: usize,
    alpha: f64,
) -> Result<DMatrix<f64>> {
    let jmax = 2 * n.saturating_sub(1);
    // column coefficients with the basis weight and the (−i)^{p+q} phase folded
    let mut cols = Vec::with_capacity(n * n);
    let ln_gammas: Vec<Dd> = (0..n)
        .map(|p| Dd::from(p as f64 + 1.0).lgamma())
        .collect::<Result<_>>()?;
    for p in 0..n {
        for q in 0..n {
            // w = 1/(2 √(2^p p! 2^q q!))
            let ln_w = DD_LN2
                .mul_f(-(1.0 + 0.5 * (p + q) as f64))
                .sub(ln_gammas[p].mul_f(0.5))
                .sub(ln_gammas[q].mul_f(0.5));
            cols.push(harmonic_coeffs(p, q, (p + q) as i64, Some(ln_w))?);
        }
    }
    let size = n * n;
    let mut entries = DMatrix::<f64>::zeros(size, size);
    for (i, &x) in nodes.iter().enumerate() {
        if x < 0.0 {
            continue;
        }
        for (j, &y) in nodes.iter().enumerate() {
            if y < 0.0 {
                continue;
            }
            let table = radial_table(jmax, alpha, x * x + y * y, false)?;
            let zpow = node_powers(x, y, jmax);
            let row = i * n + j;
            for (c, hc) in cols.iter().enumerate() {
                let (p, q) = (c / n, c % n);
                if (p % 2 == 1 && x == 0.0) || (q % 2 == 1 && y == 0.0) {
                    entries[(row, c)] = 0.0;
                } else {
                    entries[(row, c)] = eval_harmonics(hc, &zpow, &table).re.to_f64();
                }
            }
        }
    }
    mirror_rows(&mut entries, nodes, n);
    Ok(entries)
}

/// Dense normalized-basis 2-D matrix via the kernel table and the monomial
/// coefficients of both tensor factors.
pub(crate) fn assemble_normalized_2d(
    nodes: &[f64],
    n: usize,
    alpha: f64,
) -> Result<DMatrix<f64>> {
    let jmax = 2 * n.saturating_sub(1);
    let mut kernels = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            kernels.push(harmonic_coeffs(k, l, 0, None)?);
        }
    }
    let ahat = monomial_coeffs_dd(n);
    let size = n * n;
    let mut entries = DMatrix::<f64>::zeros(size, size);
    let mut gtab = vec![CDD_ZERO; n * n];
    for (i, &x) in nodes.iter().enumerate() {
        if x < 0.0 {
            continue;
        }
        for (j, &y) in nodes.iter().enumerate() {
            if y < 0.0 {
                continue;
            }
            let table = radial_table(jmax, alpha, x * x + y * y, true)?;
            let zpow = node_powers(x, y, jmax);
            for (c, hc) in kernels.iter().enumerate() {
                gtab[c] = eval_harmonics(hc, &zpow, &table);
            }
            let row = i * n + j;
            for nb in 0..n {
                for mb in 0..n {
                    if (nb % 2 == 1 && x == 0.0) || (mb % 2 == 1 && y == 0.0) {
                        entries[(row, nb * n + mb)] = 0.0;
                        continue;
                    }
                    let mut acc = CDD_ZERO;
                    let mut k = nb % 2;
                    while k <= nb {
                        let ank = ahat[nb][k];
                        let mut l = mb % 2;
                        while l <= mb {
                            acc = acc.add(gtab[k * n + l].scale(ank.mul(ahat[mb][l])));
                            l += 2;
                        }
                        k += 2;
                    }
                    // (−i)^{nb+mb} = i^{-(nb+mb)}
                    let val = acc.mul_i_pow(-((nb + mb) as i64));
                    entries[(row, nb * n + mb)] = val.re.to_f64();
                }
            }
        }
    }
    mirror_rows(&mut entries, nodes, n);
    Ok(entries)
}

/// Fill rows at negative coordinates from their mirror images:
/// entry at (−x, y) is (−1)^p × entry at (x, y) where p is the column's
/// basis index along x, and likewise in y.
fn mirror_rows(entries: &mut DMatrix<f64>, nodes: &[f64], n: usize) {
    let size = n * n;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (nodes[i], nodes[j]);
            if x >= 0.0 && y >= 0.0 {
                continue;
            }
            let si = if x < 0.0 { n - 1 - i } else { i };
            let sj = if y < 0.0 { n - 1 - j } else { j };
            let src = si * n + sj;
            let dst = i * n + j;
            for c in 0..size {
                let (p, q) = (c / n, c % n);
                let mut v = entries[(src, c)];
                if x < 0.0 && p % 2 == 1 {
                    v = -v;
                }
                if y < 0.0 && q % 2 == 1 {
                    v = -v;
                }
                entries[(dst, c)] = v;
            }
        }
    }
}
