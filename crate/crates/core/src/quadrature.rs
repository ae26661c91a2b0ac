//! Integration against the invariant measure `dμ_Λ = dy/√(1 + Λy²)`.
//!
//! The measure is flattened by a change of variable before any quadrature:
//!
//! - Λ < 0: `y = sin θ/√|Λ|` gives `dμ = dθ/√|Λ|` on `(−π/2, π/2)`;
//! - Λ > 0: `y = sinh(√Λ u)/√Λ` gives `dμ = du` on ℝ, truncated at `±U`;
//! - Λ = 0: `dμ = dy`, truncated at `±U`.
//!
//! The transformed integral is evaluated by composite Gauss–Legendre on
//! `[0, T]` with the integrand folded as `g(t) + g(−t)`, so odd integrands
//! cancel exactly. Panels double until two successive estimates agree.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term recurrence for `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if libm::fabs(dx) < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Λ < 0, angle substitution over the whole domain.
    GaussLegendreTheta,
    /// Λ > 0, flattening coordinate truncated at `±U`.
    GaussLegendreUTruncated,
    /// Λ = 0, plain `y` truncated at `±U`.
    GaussLegendreYTruncated,
}

#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    lambda: f64,
    scheme: Scheme,
    half_width: f64,
    tol: f64,
    rule: GaussLegendre,
    max_panels: usize,
}

const PANEL_ORDER: usize = 16;
const MAX_PANELS: usize = 4096;

impl QuadratureSpec {
    /// Spec for integrands decaying at least like `Ψ₀²`.
    pub fn new(lambda: f64, tol: f64) -> Result<Self> {
        Self::for_degree(lambda, 0, tol)
    }

    /// Spec for integrands `P(y)·(1+Λy²)^{−1/Λ}` with `deg P = degree`; the
    /// truncation `U` comes from the tail decay `cosh(√Λu)^{degree − 2/Λ}`.
    pub fn for_degree(lambda: f64, degree: u64, tol: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteLambda(lambda));
        }
        let tol = if tol > 0.0 { tol } else { 1e-12 };
        let log_inv_tol = -libm::log(tol);
        let (scheme, half_width) = if lambda < 0.0 {
            (Scheme::GaussLegendreTheta, FRAC_PI_2)
        } else if lambda > 0.0 {
            let rate = (2.0 / lambda - degree as f64) * libm::sqrt(lambda);
            if rate <= 0.0 {
                return Err(Error::DivergentTail { rate });
            }
            // e^{−rate·U} below tol, with margin for polynomial prefactors
            let u = (log_inv_tol + 10.0 + 2.0 * degree as f64) / rate;
            // beyond √Λ·U ≈ 700 the map y(u) overflows
            let cap = 700.0 / libm::sqrt(lambda);
            (Scheme::GaussLegendreUTruncated, u.max(4.0).min(cap))
        } else {
            // y^d e^{−y²} below tol·e^{−10}
            let d = degree as f64;
            let mut u = 1.0_f64;
            while d * libm::log(u) - u * u > -(log_inv_tol + 10.0) {
                u += 0.25;
            }
            (Scheme::GaussLegendreYTruncated, u)
        };
        Ok(QuadratureSpec {
            lambda,
            scheme,
            half_width,
            tol,
            rule: GaussLegendre::new(PANEL_ORDER),
            max_panels: MAX_PANELS,
        })
    }

    /// Overrides the truncation half-width (Λ ≥ 0 only; ignored for Λ < 0).
    pub fn with_half_width(mut self, u: f64) -> Result<Self> {
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::NonPositiveHalfWidth(u));
        }
        if self.scheme != Scheme::GaussLegendreTheta {
            self.half_width = u;
        }
        Ok(self)
    }

    /// Caps the number of Gauss–Legendre nodes per half-interval.
    pub fn with_node_cap(mut self, nodes: usize) -> Self {
        self.max_panels = (nodes / PANEL_ORDER).max(1);
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Maps the transformed variable to `(y, dμ/dt)`.
    pub fn transform(&self, t: f64) -> (f64, f64) {
        match self.scheme {
            Scheme::GaussLegendreTheta => {
                let s = libm::sqrt(-self.lambda);
                (libm::sin(t) / s, 1.0 / s)
            }
            Scheme::GaussLegendreUTruncated => {
                let s = libm::sqrt(self.lambda);
                (libm::sinh(s * t) / s, 1.0)
            }
            Scheme::GaussLegendreYTruncated => (t, 1.0),
        }
    }

    /// Enough panels that the integrand's natural width (≈1 in `u`, or
    /// `√|Λ|` in θ) is resolved from the start.
    fn initial_panels(&self) -> usize {
        let width = match self.scheme {
            Scheme::GaussLegendreTheta => libm::sqrt(-self.lambda),
            _ => 1.0,
        };
        let n = libm::ceil(self.half_width / width) as usize;
        n.next_power_of_two().clamp(2, self.max_panels.max(2))
    }

    /// Composite rule with `panels` panels on `[0, T]`, folded. Returns the
    /// estimate and the matching estimate of `∫|g|`.
    fn composite(&self, g: &impl Fn(f64) -> f64, panels: usize) -> (f64, f64) {
        let width = self.half_width / panels as f64;
        let mut sum = 0.0;
        let mut abs = 0.0;
        for p in 0..panels {
            let (a, b) = (p as f64 * width, (p + 1) as f64 * width);
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            for (x, w) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let t = c + h * x;
                let (gp, gm) = (g(t), g(-t));
                sum += h * w * (gp + gm);
                abs += h * w * (libm::fabs(gp) + libm::fabs(gm));
            }
        }
        (sum, abs)
    }
}

/// `∫ f dμ_Λ` over the domain (truncated for Λ ≥ 0).
pub fn integrate_measure(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
    let g = |t: f64| {
        let (y, jac) = spec.transform(t);
        f(y) * jac
    };
    let mut panels = spec.initial_panels();
    let (mut prev, _) = spec.composite(&g, panels);
    loop {
        panels *= 2;
        let (cur, abs) = spec.composite(&g, panels);
        if abs == 0.0 {
            return Ok(0.0);
        }
        if libm::fabs(cur - prev) <= spec.tol * abs {
            if spec.scheme != Scheme::GaussLegendreTheta {
                check_tail(&g, spec, abs)?;
            }
            return Ok(cur);
        }
        if panels >= spec.max_panels.max(4) {
            return Err(Error::QuadratureNotConverged {
                nodes: 2 * panels * PANEL_ORDER,
                last: cur,
                previous: prev,
            });
        }
        prev = cur;
    }
}

fn check_tail(g: &impl Fn(f64) -> f64, spec: &QuadratureSpec, abs: f64) -> Result<()> {
    let t = spec.half_width;
    let edge = libm::fabs(g(t)) + libm::fabs(g(-t));
    let inner = libm::fabs(g(0.75 * t)) + libm::fabs(g(-0.75 * t));
    if edge > 0.0 && edge >= inner && edge * t > spec.tol * abs {
        let rate = if inner > 0.0 {
            libm::log(edge / inner) / (0.25 * t)
        } else {
            f64::INFINITY
        };
        return Err(Error::DivergentTail { rate });
    }
    Ok(())
}

/// Sturm–Liouville coefficients `p = (1+Λy²)^{1/2 − 1/Λ}` and `r = p/(1+Λy²)`.
pub fn sl_weights(y: f64, lambda: f64) -> Result<(f64, f64)> {
    if lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    if !lambda.is_finite() {
        return Err(Error::NonFiniteLambda(lambda));
    }
    let z = 1.0 + lambda * y * y;
    let p = libm::pow(z, 0.5 - 1.0 / lambda);
    Ok((p, p / z))
}
