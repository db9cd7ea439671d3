//! Dense solvers over the assembled matrices: linear reaction problems,
//! Newton iteration for nonlinear terms, the fractional-oscillator
//! eigenproblem, and condition-number reporting.

use nalgebra::{DMatrix, DVector};

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::fracdm::{
    dm_lagrange_1d, dm_multiterm, dm_multiterm_2d, dm_normalized_1d_quadrature,
    lagrange_synthesis_matrix, FracDiffMatrix, FracOrder, ScaledGrid,
};
use crate::quadrature::{gauss_hermite, GaussHermiteRule};
use crate::specfun::hermite_seq;

/// Default Newton tolerance; values down to 1e-16 are accepted but sit at
/// the representable floor for O(1) right-hand sides.
pub const NEWTON_DEFAULT_TOL: f64 = 1e-14;
/// Imaginary parts above this abort an eigen-solve as spurious.
pub const SPECTRUM_IMAG_LIMIT: f64 = 1e-8;

/// Reaction term γ f(u).
#[derive(Clone)]
pub enum Nonlinearity {
    /// f ≡ 0 (pure fractional Laplace equation).
    None,
    /// f(u) = u.
    LinearU,
    /// f(u) = u².
    SquareU,
    /// User-supplied f and f'.
    Custom {
        f: std::sync::Arc<dyn Fn(f64) -> f64>,
        df: std::sync::Arc<dyn Fn(f64) -> f64>,
    },
}

impl Nonlinearity {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::None => 0.0,
            Nonlinearity::LinearU => u,
            Nonlinearity::SquareU => u * u,
            Nonlinearity::Custom { f, .. } => f(u),
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::None => 0.0,
            Nonlinearity::LinearU => 1.0,
            Nonlinearity::SquareU => 2.0 * u,
            Nonlinearity::Custom { df, .. } => df(u),
        }
    }

    fn admits_direct_solve(&self) -> bool {
        matches!(self, Nonlinearity::None | Nonlinearity::LinearU)
    }
}

/// Right-hand-side sampler, matching the problem dimension.
pub enum RhsSampler {
    OneD(Box<dyn Fn(f64) -> f64>),
    TwoD(Box<dyn Fn(f64, f64) -> f64>),
}

/// One collocation problem: Σ_j (−Δ)^{α_j/2} u + γ f(u) = g.
pub struct CollocationProblem {
    pub alphas: Vec<FracOrder>,
    pub gamma: f64,
    pub nonlinearity: Nonlinearity,
    pub rhs: RhsSampler,
    pub basis: BasisKind,
    pub r: f64,
    pub n: usize,
    pub dim: usize,
}

impl CollocationProblem {
    pub fn new_1d<F: Fn(f64) -> f64 + 'static>(
        alphas: Vec<FracOrder>,
        gamma: f64,
        nonlinearity: Nonlinearity,
        rhs: F,
        basis: BasisKind,
        r: f64,
        n: usize,
    ) -> Result<CollocationProblem> {
        validate_problem(&alphas, r, n)?;
        Ok(CollocationProblem {
            alphas,
            gamma,
            nonlinearity,
            rhs: RhsSampler::OneD(Box::new(rhs)),
            basis,
            r,
            n,
            dim: 1,
        })
    }

    pub fn new_2d<F: Fn(f64, f64) -> f64 + 'static>(
        alphas: Vec<FracOrder>,
        gamma: f64,
        nonlinearity: Nonlinearity,
        rhs: F,
        basis: BasisKind,
        r: f64,
        n: usize,
    ) -> Result<CollocationProblem> {
        validate_problem(&alphas, r, n)?;
        Ok(CollocationProblem {
            alphas,
            gamma,
            nonlinearity,
            rhs: RhsSampler::TwoD(Box::new(rhs)),
            basis,
            r,
            n,
            dim: 2,
        })
    }

    fn assemble(&self) -> Result<FracDiffMatrix> {
        match self.dim {
            1 => dm_multiterm(self.n, &self.alphas, self.basis, self.r),
            2 => {
                if (self.r - 1.0).abs() > 0.0 {
                    return Err(Error::Usage(
                        "2-D solves run on the unscaled grid (r = 1)".into(),
                    ));
                }
                dm_multiterm_2d(self.n, &self.alphas, self.basis)
            }
            d => Err(Error::Usage(format!("dimension must be 1 or 2, got {d}"))),
        }
    }

    fn rhs_vector(&self, grid: &ScaledGrid) -> Result<DVector<f64>> {
        let pts = &grid.points;
        let n = pts.len();
        let g = match (&self.rhs, self.dim) {
            (RhsSampler::OneD(f), 1) => DVector::from_iterator(n, pts.iter().map(|&x| f(x))),
            (RhsSampler::TwoD(f), 2) => {
                let mut v = DVector::zeros(n * n);
                for (i, &x) in pts.iter().enumerate() {
                    for (j, &y) in pts.iter().enumerate() {
                        v[i * n + j] = f(x, y);
                    }
                }
                v
            }
            _ => {
                return Err(Error::Usage(
                    "right-hand-side sampler does not match the problem dimension".into(),
                ))
            }
        };
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("right-hand side sampled non-finite values".into()));
        }
        Ok(g)
    }
}

fn validate_problem(alphas: &[FracOrder], r: f64, n: usize) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::Usage("at least one fractional order is required".into()));
    }
    if let Some(bad) = alphas.iter().find(|a| !a.solver_admissible()) {
        return Err(Error::Domain(format!(
            "solvers take fractional orders strictly inside (0, 2); got {bad}"
        )));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!("scaling factor must be > 0, got {r}")));
    }
    if n == 0 {
        return Err(Error::Usage("basis size must be positive".into()));
    }
    Ok(())
}

/// Matrix of basis values at the collocation nodes, B(i, j) = φ_j(node_i);
/// the identity for the Lagrange (cardinal) basis.
#[derive(Clone, Debug)]
pub struct BasisValueMatrix {
    pub entries: DMatrix<f64>,
}

pub fn basis_value_matrix(basis: BasisKind, rule: &GaussHermiteRule) -> BasisValueMatrix {
    let n = rule.n();
    let entries = match basis.hermite_kind() {
        None => DMatrix::identity(n, n),
        Some(kind) => {
            let mut b = DMatrix::zeros(n, n);
            for (i, &x) in rule.nodes().iter().enumerate() {
                let h = hermite_seq(kind, n - 1, x);
                for j in 0..n {
                    b[(i, j)] = h[j];
                }
            }
            b
        }
    };
    BasisValueMatrix { entries }
}

fn basis_value_matrix_dim(
    basis: BasisKind,
    rule: &GaussHermiteRule,
    dim: usize,
) -> BasisValueMatrix {
    let b = basis_value_matrix(basis, rule);
    if dim == 1 {
        b
    } else {
        BasisValueMatrix {
            entries: b.entries.kronecker(&b.entries),
        }
    }
}

/// Coefficient vector with everything needed to evaluate it anywhere.
pub struct SpectralSolution {
    pub coeffs: Vec<f64>,
    pub basis: BasisKind,
    pub r: f64,
    pub grid: ScaledGrid,
    pub dim: usize,
    pub residual_norm: f64,
    pub iterations: usize,
    /// ‖R‖_∞ before each Newton update plus the final value; a single entry
    /// for direct solves.
    pub residual_history: Vec<f64>,
}

impl SpectralSolution {
    /// Pointwise synthesis Σ c_n φ_n(r x); Lagrange solutions go through
    /// their normalized-basis representation.
    pub fn evaluate(&self, x: f64) -> f64 {
        assert_eq!(self.dim, 1, "use evaluate2 for 2-D solutions");
        match self.basis.hermite_kind() {
            Some(kind) => {
                let h = hermite_seq(kind, self.coeffs.len() - 1, self.r * x);
                h.iter().zip(&self.coeffs).map(|(a, c)| a * c).sum()
            }
            None => {
                let hat = self.lagrange_to_hat();
                let h = hermite_seq(
                    crate::specfun::HermiteKind::Normalized,
                    hat.len() - 1,
                    self.r * x,
                );
                h.iter().zip(&hat).map(|(a, c)| a * c).sum()
            }
        }
    }

    /// Tensor synthesis for 2-D solutions.
    pub fn evaluate2(&self, x: f64, y: f64) -> f64 {
        assert_eq!(self.dim, 2, "use evaluate for 1-D solutions");
        let n = self.grid.rule.n();
        let kind = self
            .basis
            .hermite_kind()
            .expect("2-D solutions use modal bases");
        let hx = hermite_seq(kind, n - 1, self.r * x);
        let hy = hermite_seq(kind, n - 1, self.r * y);
        let mut acc = 0.0;
        for p in 0..n {
            let mut inner = 0.0;
            for q in 0..n {
                inner += self.coeffs[p * n + q] * hy[q];
            }
            acc += hx[p] * inner;
        }
        acc
    }

    /// Normalized-basis coefficients of a Lagrange (nodal-value) solution:
    /// ĉ_k = Σ_j b_k^j u_j.
    pub fn lagrange_to_hat(&self) -> Vec<f64> {
        let b = lagrange_synthesis_matrix(&self.grid.rule);
        let u = DVector::from_column_slice(&self.coeffs);
        (b * u).iter().copied().collect()
    }
}

/// Evaluate a 1-D solution at many points.
pub fn evaluate_solution(s: &SpectralSolution, points: &[f64]) -> Vec<f64> {
    points.iter().map(|&x| s.evaluate(x)).collect()
}

impl SpectralSolution {
    /// Dump in the matrix CSV style: a field header, one metadata line, then
    /// the coefficients with round-tripping precision.
    pub fn write_csv<P: AsRef<std::path::Path>>(&self, path: P) -> Result<()> {
        use std::io::Write;
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "basis,r,dim,n,residual,iterations")?;
        writeln!(
            out,
            "{},{:.17e},{},{},{:.17e},{}",
            self.basis,
            self.r,
            self.dim,
            self.grid.rule.n(),
            self.residual_norm,
            self.iterations
        )?;
        for c in &self.coeffs {
            writeln!(out, "{c:.17e}")?;
        }
        Ok(())
    }

    pub fn read_csv<P: AsRef<std::path::Path>>(path: P) -> Result<SpectralSolution> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Data("empty solution file".into()))?;
        if header != "basis,r,dim,n,residual,iterations" {
            return Err(Error::Data(format!("unexpected header '{header}'")));
        }
        let meta = lines
            .next()
            .ok_or_else(|| Error::Data("missing metadata line".into()))?;
        let fields: Vec<&str> = meta.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Data("metadata line needs 6 fields".into()));
        }
        let basis = BasisKind::parse(fields[0])?;
        let bad = |e: String| Error::Data(e);
        let r: f64 = fields[1].parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?;
        let dim: usize = fields[2].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let n: usize = fields[3].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let residual_norm: f64 =
            fields[4].parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?;
        let iterations: usize =
            fields[5].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let coeffs: Vec<f64> = lines
            .map(|l| l.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string())))
            .collect::<Result<_>>()?;
        if coeffs.len() != n.pow(dim as u32) {
            return Err(Error::Data(format!(
                "expected {} coefficients, found {}",
                n.pow(dim as u32),
                coeffs.len()
            )));
        }
        let rule = gauss_hermite(n)?;
        Ok(SpectralSolution {
            coeffs,
            basis,
            r,
            grid: ScaledGrid::new(rule, r)?,
            dim,
            residual_norm,
            iterations,
            residual_history: Vec::new(),
        })
    }
}

/// κ₂ = σ_max/σ_min by full SVD; +∞ when the matrix is exactly singular.
pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for s in sv.iter() {
        lo = lo.min(*s);
        hi = hi.max(*s);
    }
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

struct AssembledSystem {
    d: DMatrix<f64>,
    b: DMatrix<f64>,
    g: DVector<f64>,
    grid: ScaledGrid,
}

fn assemble_system(p: &CollocationProblem) -> Result<AssembledSystem> {
    let dm = p.assemble()?;
    let rule = gauss_hermite(p.n)?;
    let grid = ScaledGrid::new(rule, p.r)?;
    let b = basis_value_matrix_dim(p.basis, &grid.rule, p.dim);
    let g = p.rhs_vector(&grid)?;
    Ok(AssembledSystem {
        d: dm.entries,
        b: b.entries,
        g,
        grid,
    })
}

fn lu_solve(a: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let lu = a.clone().lu();
    match lu.solve(rhs) {
        Some(c) if c.iter().all(|v| v.is_finite()) => Ok(c),
        _ => Err(Error::Singular {
            cond: condition_number(a),
        }),
    }
}

/// Solve (D + γB) c = g by dense LU with partial pivoting.
pub fn solve_linear(p: &CollocationProblem) -> Result<SpectralSolution> {
    if !p.nonlinearity.admits_direct_solve() {
        return Err(Error::Usage(
            "direct solve covers f = 0 and f(u) = u; use the Newton solver".into(),
        ));
    }
    let sys = assemble_system(p)?;
    let a = match p.nonlinearity {
        Nonlinearity::LinearU => &sys.d + &sys.b * p.gamma,
        _ => sys.d.clone(),
    };
    let c = lu_solve(&a, &sys.g)?;
    let residual_norm = (&a * &c - &sys.g).amax();
    Ok(SpectralSolution {
        coeffs: c.iter().copied().collect(),
        basis: p.basis,
        r: p.r,
        grid: sys.grid,
        dim: p.dim,
        residual_norm,
        iterations: 1,
        residual_history: vec![residual_norm],
    })
}

/// Newton iteration c ← c − J⁻¹ R(c) with R(c) = Dc + γ f(Bc) − g and
/// J = D + γ diag(f'(Bc)) B, starting from the zero vector.
pub fn solve_newton(p: &CollocationProblem, tol: f64, maxit: usize) -> Result<SpectralSolution> {
    let size = p.n.pow(p.dim as u32);
    solve_newton_from(p, DVector::zeros(size), tol, maxit)
}

/// Newton iteration from a caller-supplied initial coefficient vector.
pub fn solve_newton_from(
    p: &CollocationProblem,
    mut c: DVector<f64>,
    tol: f64,
    maxit: usize,
) -> Result<SpectralSolution> {
    if !(tol.is_finite() && tol >= 1e-16) {
        return Err(Error::Usage(format!(
            "Newton tolerance must be at least 1e-16, got {tol}"
        )));
    }
    if maxit == 0 {
        return Err(Error::Usage("Newton needs at least one iteration".into()));
    }
    let sys = assemble_system(p)?;
    if c.len() != sys.g.len() {
        return Err(Error::Usage(format!(
            "initial guess has length {}, system has {}",
            c.len(),
            sys.g.len()
        )));
    }
    let mut iterations = 0;
    let mut residual_norm;
    let mut residual_history = Vec::new();
    loop {
        let u = &sys.b * &c;
        let mut res = &sys.d * &c - &sys.g;
        for i in 0..res.len() {
            res[i] += p.gamma * p.nonlinearity.eval(u[i]);
        }
        residual_norm = res.amax();
        residual_history.push(residual_norm);
        if !residual_norm.is_finite() {
            return Err(Error::NonConvergence {
                iterations,
                residual: residual_norm,
            });
        }
        if residual_norm <= tol {
            break;
        }
        if iterations >= maxit {
            return Err(Error::NonConvergence {
                iterations,
                residual: residual_norm,
            });
        }
        let mut jac = sys.d.clone();
        for i in 0..jac.nrows() {
            let w = p.gamma * p.nonlinearity.deriv(u[i]);
            for j in 0..jac.ncols() {
                jac[(i, j)] += w * sys.b[(i, j)];
            }
        }
        let step = lu_solve(&jac, &res)?;
        c -= step;
        iterations += 1;
    }
    Ok(SpectralSolution {
        coeffs: c.iter().copied().collect(),
        basis: p.basis,
        r: p.r,
        grid: sys.grid,
        dim: p.dim,
        residual_norm,
        iterations,
        residual_history,
    })
}

/// Eigenvalues of the fractional harmonic oscillator, ascending.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// Largest imaginary magnitude discarded from the dense spectrum.
    pub max_imag: f64,
}

/// Solve ((−Δ)^{α/2} + x²) u = λ u on the Lagrange basis, where the
/// potential is exactly diagonal. The normalized-basis operator behind the
/// cardinal functions is assembled by the quadrature route, which stays
/// accurate at every admitted size.
pub fn solve_eigen(n: usize, alpha: FracOrder) -> Result<EigenResult> {
    if !alpha.solver_admissible() {
        return Err(Error::Domain(
            "the eigenproblem takes fractional orders strictly inside (0, 2)".into(),
        ));
    }
    let dhat = dm_normalized_1d_quadrature(n, alpha)?;
    let rule = gauss_hermite(n)?;
    let b = lagrange_synthesis_matrix(&rule);
    let mut a = &dhat.entries * b;
    for (i, &x) in rule.nodes().iter().enumerate() {
        a[(i, i)] += x * x;
    }
    let eig = a.complex_eigenvalues();
    let max_imag = eig.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
    if max_imag > SPECTRUM_IMAG_LIMIT {
        return Err(Error::SpuriousSpectrum {
            max_imag,
            limit: SPECTRUM_IMAG_LIMIT,
        });
    }
    let mut eigenvalues: Vec<f64> = eig.iter().map(|z| z.re).collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(EigenResult {
        eigenvalues,
        max_imag,
    })
}

/// Lagrange-basis mass-like matrix access for callers assembling their own
/// systems on cardinal functions.
pub fn dm_lagrange(n: usize, alpha: FracOrder) -> Result<FracDiffMatrix> {
    dm_lagrange_1d(n, alpha)
}
