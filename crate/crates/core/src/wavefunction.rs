//! Eigenfunctions `Ψ_m(y, Λ) = H̃_m(y, Λ)·(1 + Λy²)^{−1/(2Λ)}`.
//!
//! Functions are unnormalized; [`WaveFunction::norm`] computes
//! `√⟨Ψ_m, Ψ_m⟩_μ` once and caches it.

use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::hermite::generating_coeffs;
use crate::params::{classify, DeformationParam, SignClass};
use crate::poly::Poly;
use crate::quadrature::{integrate_measure, QuadratureSpec};
use crate::spectrum::level_energy;
use crate::{Error, Result};

/// Below this |Λ| the envelope is evaluated as the Gaussian limit.
pub const GAUSSIAN_SWITCH: f64 = 1e-8;

const NODE_TOL: f64 = 1e-12;
const OVERLAP_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct WaveFunction {
    m: u64,
    domain: DeformationParam,
    poly: Poly<f64>,
    norm: OnceCell<f64>,
}

impl WaveFunction {
    /// `Ψ_m` with the generating-function polynomial.
    pub fn new(m: u64, lambda: f64) -> Result<Self> {
        let domain = classify(lambda)?;
        let family = generating_coeffs(m as usize, &lambda);
        let poly = family.into_iter().last().expect("non-empty family").into_poly();
        Ok(WaveFunction {
            m,
            domain,
            poly,
            norm: OnceCell::new(),
        })
    }

    /// Wraps an arbitrary polynomial factor (e.g. from another route).
    pub fn from_poly(m: u64, lambda: f64, poly: Poly<f64>) -> Result<Self> {
        Ok(WaveFunction {
            m,
            domain: classify(lambda)?,
            poly,
            norm: OnceCell::new(),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.domain.lambda()
    }

    pub fn poly(&self) -> &Poly<f64> {
        &self.poly
    }

    /// `−1/(2Λ)`; `None` at Λ = 0 where the envelope is Gaussian.
    pub fn envelope_exponent(&self) -> Option<f64> {
        let l = self.lambda();
        (l != 0.0).then(|| -0.5 / l)
    }

    pub fn is_bound(&self) -> bool {
        self.domain.is_bound(self.m)
    }

    pub fn energy(&self) -> f64 {
        level_energy(self.lambda(), self.m as f64)
    }

    pub fn evaluate(&self, y: f64) -> Result<f64> {
        if !self.domain.contains(y) {
            return Err(Error::OutOfDomain {
                y,
                half_width: self.domain.half_width().unwrap_or(f64::INFINITY),
            });
        }
        Ok(self.evaluate_unchecked(y))
    }

    /// As [`evaluate`](Self::evaluate) but returns 0 beyond a wall.
    pub fn evaluate_unchecked(&self, y: f64) -> f64 {
        let e = envelope(y, self.lambda());
        if e == 0.0 {
            return 0.0;
        }
        compensated_horner(self.poly.coeffs(), y) * e
    }

    /// `Ψ_m/‖Ψ_m‖_μ`.
    pub fn evaluate_normalized(&self, y: f64) -> Result<f64> {
        Ok(self.evaluate(y)? / self.norm()?)
    }

    /// `(Ψ, Ψ′, Ψ″)` divided by the envelope, from
    /// `E′/E = −y/z` and `E″/E = ((1+Λ)y² − 1)/z²`.
    pub fn reduced_derivatives(&self, y: f64) -> (f64, f64, f64) {
        let l = self.lambda();
        let z = 1.0 + l * y * y;
        let d1 = self.poly.derivative();
        let d2 = d1.derivative();
        let (q, q1, q2) = (
            compensated_horner(self.poly.coeffs(), y),
            compensated_horner(d1.coeffs(), y),
            compensated_horner(d2.coeffs(), y),
        );
        let p1 = q1 - y * q / z;
        let p2 = q2 - 2.0 * y * q1 / z + q * ((1.0 + l) * y * y - 1.0) / (z * z);
        (q, p1, p2)
    }

    /// `(Ψ, Ψ′, Ψ″)` at `y`.
    pub fn derivatives(&self, y: f64) -> (f64, f64, f64) {
        let e = envelope(y, self.lambda());
        let (a, b, c) = self.reduced_derivatives(y);
        (a * e, b * e, c * e)
    }

    /// Residual of `−½zΨ″ − ½ΛyΨ′ + ½(1+Λ)(y²/z)Ψ = e_mΨ`, relative to the
    /// largest of the four terms. The envelope cancels and is left out.
    pub fn schrodinger_residual(&self, y: f64) -> f64 {
        let l = self.lambda();
        let z = 1.0 + l * y * y;
        let (p, p1, p2) = self.reduced_derivatives(y);
        let terms = [
            -0.5 * z * p2,
            -0.5 * l * y * p1,
            0.5 * (1.0 + l) * y * y / z * p,
            -self.energy() * p,
        ];
        let scale = terms.iter().fold(0.0_f64, |a, t| a.max(libm::fabs(*t)));
        let sum: f64 = terms.iter().sum();
        if scale == 0.0 {
            0.0
        } else {
            libm::fabs(sum) / scale
        }
    }

    /// Zeros of the polynomial factor inside the domain, ascending.
    pub fn nodes(&self) -> Vec<f64> {
        if self.m == 0 || self.poly.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let coeffs = self.poly.coeffs();
        let f = |y: f64| compensated_horner(coeffs, y);
        let steps = 4000 + 400 * self.m as usize;
        // positive half-line, sampled in θ for Λ < 0 so the edge is resolved
        let sample: alloc::boxed::Box<dyn Fn(f64) -> f64> = match self.domain.half_width() {
            Some(a) => alloc::boxed::Box::new(move |s: f64| a * libm::sin(s * core::f64::consts::FRAC_PI_2)),
            None => {
                let bound = cauchy_bound(coeffs);
                alloc::boxed::Box::new(move |s: f64| bound * s)
            }
        };
        let mut positive = Vec::new();
        let mut y0 = sample(0.0);
        let mut f0 = f(y0);
        if self.m % 2 == 1 {
            // odd: y = 0 is a root; start just past it
            y0 = sample(1.0 / steps as f64);
            f0 = f(y0);
        }
        for i in 2..=steps {
            let y1 = sample(i as f64 / steps as f64);
            let f1 = f(y1);
            if f0 == 0.0 {
                positive.push(y0);
            } else if f0.signum() != f1.signum() && f1 != 0.0 {
                positive.push(bisect(&f, y0, y1, f0));
            }
            y0 = y1;
            f0 = f1;
        }
        if self.domain.sign_class() != SignClass::Negative && f0 == 0.0 {
            positive.push(y0);
        }
        let mut out: Vec<f64> = positive.iter().rev().map(|y| -y).collect();
        if self.m % 2 == 1 {
            out.push(0.0);
        }
        out.extend(positive);
        out
    }

    /// `‖Ψ_m‖_μ`, computed once.
    pub fn norm(&self) -> Result<f64> {
        if let Some(n) = self.norm.get() {
            return Ok(*n);
        }
        let n = libm::sqrt(norm_and_overlap(self, self)?);
        Ok(*self.norm.get_or_init(|| n))
    }
}

/// `(1 + Λy²)^{−1/(2Λ)}`, or `e^{−y²/2}` for |Λ| < 10⁻⁸. Zero at and beyond
/// the wall for Λ < 0.
pub fn envelope(y: f64, lambda: f64) -> f64 {
    if libm::fabs(lambda) < GAUSSIAN_SWITCH {
        return libm::exp(-0.5 * y * y);
    }
    let w = lambda * y * y;
    if w <= -1.0 {
        return 0.0;
    }
    libm::exp(-0.5 * libm::log1p(w) / lambda)
}

/// `⟨Ψ_a, Ψ_b⟩_μ` over the domain.
pub fn norm_and_overlap(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    if a.lambda() != b.lambda() {
        return Err(Error::InvalidParams("overlap of functions with different lambda"));
    }
    for w in [a, b] {
        if !w.is_bound() {
            return Err(Error::UnboundState {
                m: w.m,
                max: w.domain.max_bound().unwrap_or(u64::MAX),
            });
        }
    }
    let lambda = a.lambda();
    let spec = QuadratureSpec::for_degree(lambda, a.m + b.m, OVERLAP_TOL)?;
    let (pa, pb) = (a.poly.coeffs(), b.poly.coeffs());
    integrate_measure(
        |y| {
            let e = envelope(y, lambda);
            compensated_horner(pa, y) * compensated_horner(pb, y) * e * e
        },
        &spec,
    )
}

/// Horner's rule with an error-free transformation of every step
/// (Graillat–Langlois–Louvet), accurate to about twice working precision.
pub fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    let Some((&last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let mut s = last;
    let mut c = 0.0;
    for &a in rest.iter().rev() {
        let p = s * x;
        let pe = libm::fma(s, x, -p);
        let t = p + a;
        let bb = t - p;
        let se = (p - (t - bb)) + (a - bb);
        s = t;
        c = c * x + (pe + se);
    }
    s + c
}

fn cauchy_bound(coeffs: &[f64]) -> f64 {
    let lead = libm::fabs(*coeffs.last().expect("non-zero polynomial"));
    1.0 + coeffs[..coeffs.len() - 1]
        .iter()
        .fold(0.0_f64, |m, c| m.max(libm::fabs(*c) / lead))
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    while hi - lo > NODE_TOL * libm::fabs(lo).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hermite(n: usize, y: f64) -> f64 {
        let (mut h0, mut h1) = (1.0, 2.0 * y);
        if n == 0 {
            return h0;
        }
        for k in 1..n {
            let h2 = 2.0 * y * h1 - 2.0 * k as f64 * h0;
            h0 = h1;
            h1 = h2;
        }
        h1
    }

    #[test]
    fn envelope_values() {
        assert_eq!(envelope(0.0, 0.7), 1.0);
        assert!((envelope(2.0, 0.0) - libm::exp(-2.0)).abs() < 1e-16);
        assert!((envelope(1.0, 1.0) - libm::sqrt(0.5)).abs() < 1e-15);
        assert_eq!(envelope(2.0, -0.25), 0.0);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(WaveFunction::new(0, 0.4).unwrap().evaluate(0.0).unwrap(), 1.0);
        let w = WaveFunction::new(1, 0.0).unwrap();
        assert!((w.evaluate(1.0).unwrap() - 2.0 * libm::exp(-0.5)).abs() < 1e-15);
        let w = WaveFunction::new(1, -0.5).unwrap();
        assert!(matches!(w.evaluate(2.0), Err(Error::OutOfDomain { .. })));
        assert!(w.evaluate(1.414).unwrap().abs() < 1e-2);
    }

    #[test]
    fn node_examples() {
        assert!(WaveFunction::new(0, 0.2).unwrap().nodes().is_empty());
        assert_eq!(WaveFunction::new(1, 0.2).unwrap().nodes(), vec![0.0]);
        let n = WaveFunction::new(2, -0.5).unwrap().nodes();
        let r = 1.0 / libm::sqrt(3.0);
        assert!((n[0] + r).abs() < 1e-12 && (n[1] - r).abs() < 1e-12);
        let n = WaveFunction::new(2, 0.3).unwrap().nodes();
        assert!((n[1] - 1.0 / libm::sqrt(1.4)).abs() < 1e-12);
    }

    #[test]
    fn node_counts() {
        for &l in &[-0.9, -0.3, 0.0, 0.05, 0.1] {
            for m in 0..=8u64 {
                let w = WaveFunction::new(m, l).unwrap();
                if !w.is_bound() {
                    continue;
                }
                let n = w.nodes();
                assert_eq!(n.len() as u64, m, "l={l} m={m}");
                for (a, b) in n.iter().zip(n.iter().rev()) {
                    assert!((a + b).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn residual_small() {
        for &l in &[-0.4, 0.0, 0.3] {
            for m in 0..=3 {
                let w = WaveFunction::new(m, l).unwrap();
                for i in 0..20 {
                    let y = -1.4 + 0.14 * i as f64;
                    assert!(w.schrodinger_residual(y) < 1e-12, "l={l} m={m} y={y}");
                }
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let w = WaveFunction::new(3, 0.25).unwrap();
        let h = 1e-4;
        for &y in &[-1.3, 0.2, 0.9] {
            let (_, d1, d2) = w.derivatives(y);
            let f = |t: f64| w.evaluate_unchecked(t);
            let fd1 = (f(y + h) - f(y - h)) / (2.0 * h);
            let fd2 = (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-6 && (d2 - fd2).abs() < 1e-5);
        }
    }

    #[test]
    fn overlaps() {
        let a = WaveFunction::new(0, 0.4).unwrap();
        let b = WaveFunction::new(1, 0.4).unwrap();
        assert_eq!(norm_and_overlap(&a, &b).unwrap(), 0.0);
        let a = WaveFunction::new(0, -0.3).unwrap();
        let c = WaveFunction::new(2, -0.3).unwrap();
        assert!(norm_and_overlap(&a, &c).unwrap().abs() < 1e-10);
        let u = WaveFunction::new(4, 0.3).unwrap();
        assert!(matches!(norm_and_overlap(&a, &u), Err(Error::InvalidParams(_))));
        let u0 = WaveFunction::new(0, 0.3).unwrap();
        assert!(matches!(norm_and_overlap(&u0, &u), Err(Error::UnboundState { m: 4, max: 3 })));
    }

    #[test]
    fn ground_norm_against_trapezoid() {
        // u-substituted integrand cosh(u)^{-2} at Λ = 1, ∫ = 2
        let w = WaveFunction::new(0, 1.0).unwrap();
        let n2 = norm_and_overlap(&w, &w).unwrap();
        let (big, steps) = (40.0, 400_000);
        let h = 2.0 * big / steps as f64;
        let trap: f64 = (0..=steps)
            .map(|i| {
                let u = -big + i as f64 * h;
                let c = if i == 0 || i == steps { 0.5 } else { 1.0 };
                c / (libm::cosh(u) * libm::cosh(u))
            })
            .sum::<f64>()
            * h;
        assert!((n2 - trap).abs() < 1e-8 * trap);
        assert!((n2 - 2.0).abs() < 1e-12);
        assert!((w.norm().unwrap() - libm::sqrt(2.0)).abs() < 1e-12);
    }

    #[test]
    fn classical_limit() {
        for &l in &[1e-6, -1e-6, 1e-9] {
            for m in 0..=4u64 {
                let w = WaveFunction::new(m, l).unwrap();
                for i in 0..=12 {
                    let y = -3.0 + 0.5 * i as f64;
                    let exact = hermite(m as usize, y) * libm::exp(-0.5 * y * y);
                    let scale = (0..=60)
                        .map(|j| {
                            let t = -3.0 + 0.1 * j as f64;
                            (hermite(m as usize, t) * libm::exp(-0.5 * t * t)).abs()
                        })
                        .fold(0.0, f64::max);
                    assert!((w.evaluate(y).unwrap() - exact).abs() <= 1e-4 * scale);
                }
            }
        }
    }

    #[test]
    fn compensated_horner_cancellation() {
        // (x − 1)^7 expanded, evaluated near its root
        let c = [-1.0, 7.0, -21.0, 35.0, -35.0, 21.0, -7.0, 1.0];
        let x = 1.0 + 1.0 / 1024.0;
        let exact = libm::pow(1.0 / 1024.0, 7.0);
        assert!((compensated_horner(&c, x) - exact).abs() < 1e-3 * exact);
    }
}
