//! Finite-difference eigensolver in the flattening coordinate.
//!
//! With `du = dy/√(1+Λy²)` the Hamiltonian becomes `−½ d²/du² + V(u)`:
//!
//! - Λ > 0: `y = sinh(√Λu)/√Λ`, `V = (1+Λ)·tanh²(√Λu)/(2Λ)`;
//! - Λ < 0: `y = sin(√|Λ|u)/√|Λ|`, `V = (1−|Λ|)·tan²(√|Λ|u)/(2|Λ|)`, walls at
//!   `u = ±π/(2√|Λ|)`;
//! - Λ = 0: `V = u²/2`.
//!
//! The operator is discretized by central differences on the interior
//! vertices of a uniform grid with Dirichlet ends, which keeps the matrix
//! symmetric and never samples the wall singularity. This route shares no
//! code with the closed-form modules.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::params::{classify, SignClass};
use crate::tridiagonal::SymTridiagonal;
use crate::{Error, Result};

pub const MIN_GRID: usize = 64;
pub const DEFAULT_GRID_CAP: usize = 1 << 14;
const START_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    DirichletAtWalls,
    DirichletTruncated,
    DirichletTruncatedGaussian,
}

impl Boundary {
    pub fn as_str(&self) -> &'static str {
        match self {
            Boundary::DirichletAtWalls => "dirichlet_at_walls",
            Boundary::DirichletTruncated => "dirichlet_truncated",
            Boundary::DirichletTruncatedGaussian => "dirichlet_truncated_gaussian",
        }
    }
}

/// `V(u)` in units of `ħα`.
pub fn effective_potential(u: f64, lambda: f64) -> f64 {
    if lambda > 0.0 {
        let t = libm::tanh(libm::sqrt(lambda) * u);
        0.5 * (1.0 + lambda) * t * t / lambda
    } else if lambda < 0.0 {
        let a = -lambda;
        let t = libm::tan(libm::sqrt(a) * u);
        0.5 * (1.0 - a) * t * t / a
    } else {
        0.5 * u * u
    }
}

/// `V(∞) = (1+Λ)/(2Λ)` for Λ > 0.
pub fn continuum_threshold(lambda: f64) -> Option<f64> {
    (lambda > 0.0).then(|| 0.5 * (1.0 + lambda) / lambda)
}

/// Truncation half-width for Λ ≥ 0, so that the slowest-decaying bound
/// state, `cosh(√Λu)^{m − 1/Λ}`, has fallen by `e^{−12}` at the boundary
/// (the eigenvalue shift is of order the square of that).
pub fn default_half_width(lambda: f64) -> f64 {
    if lambda > 0.0 {
        let top = classify(lambda).ok().and_then(|d| d.max_bound()).unwrap_or(0);
        let rate = (1.0 / lambda - top as f64) * libm::sqrt(lambda);
        (12.0 / rate).clamp(10.0, 400.0)
    } else {
        10.0
    }
}

#[derive(Debug, Clone)]
pub struct SLDiscretization {
    lambda: f64,
    grid: usize,
    half_width: f64,
    spacing: f64,
    boundary: Boundary,
    matrix: SymTridiagonal,
}

/// Builds the operator on `grid` intervals over `[−U, U]`. For Λ < 0 the
/// half-width is the wall position and `half_width` is ignored.
pub fn assemble(lambda: f64, grid: usize, half_width: Option<f64>) -> Result<SLDiscretization> {
    let d = classify(lambda)?;
    if grid < MIN_GRID {
        return Err(Error::GridTooSmall { n: grid, min: MIN_GRID });
    }
    if let Some(u) = half_width {
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::NonPositiveHalfWidth(u));
        }
    }
    let (boundary, u) = match d.sign_class() {
        SignClass::Negative => (Boundary::DirichletAtWalls, FRAC_PI_2 / libm::sqrt(-lambda)),
        SignClass::Positive => (
            Boundary::DirichletTruncated,
            half_width.unwrap_or_else(|| default_half_width(lambda)),
        ),
        SignClass::Zero => (
            Boundary::DirichletTruncatedGaussian,
            half_width.unwrap_or_else(|| default_half_width(lambda)),
        ),
    };
    let h = 2.0 * u / grid as f64;
    let kinetic = 1.0 / (h * h);
    let diag = (1..grid)
        .map(|i| kinetic + effective_potential(-u + i as f64 * h, lambda))
        .collect();
    let off = alloc::vec![-0.5 * kinetic; grid - 2];
    Ok(SLDiscretization {
        lambda,
        grid,
        half_width: u,
        spacing: h,
        boundary,
        matrix: SymTridiagonal::new(diag, off),
    })
}

impl SLDiscretization {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn grid(&self) -> usize {
        self.grid
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }
    pub fn matrix(&self) -> &SymTridiagonal {
        &self.matrix
    }

    /// Interior grid points `u_i`.
    pub fn points(&self) -> Vec<f64> {
        (1..self.grid)
            .map(|i| -self.half_width + i as f64 * self.spacing)
            .collect()
    }

    /// Lowest `k` eigenvalues, ascending.
    pub fn eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let order = self.matrix.order();
        if k + 1 > order {
            return Err(Error::TooManyEigenvalues { k, order });
        }
        self.matrix.lowest_eigenvalues(k)
    }

    /// Grid values of the `index`-th eigenvector (unit Euclidean norm).
    pub fn eigenvector(&self, index: usize) -> Result<Vec<f64>> {
        let ev = self.eigenvalues(index + 1)?;
        Ok(self.matrix.eigenvector(ev[index]))
    }

    /// Sign changes of the `index`-th eigenvector, ignoring negligible
    /// tail components.
    pub fn node_count(&self, index: usize) -> Result<usize> {
        let v = self.eigenvector(index)?;
        let peak = v.iter().fold(0.0_f64, |a, x| a.max(libm::fabs(*x)));
        let mut count = 0;
        let mut last = 0.0;
        for &x in &v {
            if libm::fabs(x) <= 1e-9 * peak {
                continue;
            }
            if last != 0.0 && (x > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = x;
        }
        Ok(count)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefineLevel {
    pub grid: usize,
    pub eigenvalues: Vec<f64>,
    /// Diagonal of the Romberg table at this level.
    pub extrapolated: Vec<f64>,
    /// Largest change of the extrapolant from the previous level.
    pub error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub lambda: f64,
    pub half_width: f64,
    pub levels: Vec<RefineLevel>,
    pub eigenvalues: Vec<f64>,
    pub error: f64,
}

/// Lowest `k` eigenvalues, extrapolated in `h²` over grid doublings
/// (Romberg) until successive extrapolants agree within `tol`.
pub fn refine(lambda: f64, k: usize, tol: f64, grid_cap: usize) -> Result<Refinement> {
    refine_with(lambda, k, tol, grid_cap, None)
}

pub fn refine_with(
    lambda: f64,
    k: usize,
    tol: f64,
    grid_cap: usize,
    half_width: Option<f64>,
) -> Result<Refinement> {
    if !(tol >= 1e-8) {
        return Err(Error::ToleranceTooSmall(tol));
    }
    let mut grid = START_GRID.min(grid_cap).max(MIN_GRID);
    // rows[j] = Romberg row at level j
    let mut table: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut levels = Vec::new();
    let mut u = 0.0;
    loop {
        let d = assemble(lambda, grid, half_width)?;
        u = if u == 0.0 { d.half_width() } else { u };
        let raw = d.eigenvalues(k)?;
        let mut row = alloc::vec![raw.clone()];
        if let Some(prev) = table.last() {
            let mut factor = 4.0;
            for j in 0..prev.len() {
                let next: Vec<f64> = row[j]
                    .iter()
                    .zip(&prev[j])
                    .map(|(a, b)| a + (a - b) / (factor - 1.0))
                    .collect();
                row.push(next);
                factor *= 4.0;
            }
        }
        let best = row.last().expect("non-empty row").clone();
        let error = levels.last().map(|l: &RefineLevel| {
            best.iter()
                .zip(&l.extrapolated)
                .fold(0.0_f64, |m, (a, b)| m.max(libm::fabs(a - b)))
        });
        levels.push(RefineLevel {
            grid,
            eigenvalues: raw,
            extrapolated: best.clone(),
            error,
        });
        table.push(row);
        if let Some(e) = error {
            if e <= tol {
                return Ok(Refinement {
                    lambda,
                    half_width: u,
                    levels,
                    eigenvalues: best,
                    error: e,
                });
            }
        }
        if grid * 2 > grid_cap {
            return Err(Error::RefineNotConverged {
                grid,
                estimate: error.unwrap_or(f64::INFINITY),
            });
        }
        grid *= 2;
    }
}

/// Observed order `log₂((E_N − E_{2N})/(E_{2N} − E_{4N}))` per eigenvalue,
/// from raw (unextrapolated) eigenvalues.
pub fn convergence_order(lambda: f64, k: usize, grid: usize) -> Result<Vec<f64>> {
    let e: Vec<Vec<f64>> = [grid, 2 * grid, 4 * grid]
        .iter()
        .map(|&n| assemble(lambda, n, None)?.eigenvalues(k))
        .collect::<Result<_>>()?;
    Ok((0..k)
        .map(|i| libm::log2((e[0][i] - e[1][i]) / (e[1][i] - e[2][i])))
        .collect())
}
