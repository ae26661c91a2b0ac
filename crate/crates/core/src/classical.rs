//! The classical oscillator `(1 + λx²)ẍ − λxẋ² + α²x = 0` (unit mass).
//!
//! Bounded orbits are `x = A sin(ωt + φ)` with `ω² = α²/(1 + λA²)`.
//!
//! Integration runs in the coordinate `u` with `du = dx/√(1+λx²)`, in which
//! the Lagrangian becomes `½u̇² − V(u)` with
//!
//! - λ > 0: `x = sinh(√λu)/√λ`, `V = α²·tanh²(√λu)/(2λ)`;
//! - λ < 0: `x = sin(√|λ|u)/√|λ|`, `V = α²·tan²(√|λ|u)/(2|λ|)`;
//! - λ = 0: `V = α²u²/2`.
//!
//! The Hamiltonian is separable there, so velocity Verlet is symplectic and
//! time-reversible and the energy error stays bounded at `O(h²)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub x: f64,
    pub v: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitParams {
    amplitude: f64,
    omega: f64,
    phase: f64,
}

impl OrbitParams {
    pub fn new(amplitude: f64, alpha: f64, lambda: f64, phase: f64) -> Result<Self> {
        let w = 1.0 + lambda * amplitude * amplitude;
        if !(w > 0.0) {
            return Err(Error::InvalidParams("amplitude outside the domain, need 1 + lambda*A^2 > 0"));
        }
        Ok(OrbitParams {
            amplitude,
            omega: alpha / libm::sqrt(w),
            phase,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn phase(&self) -> f64 {
        self.phase
    }
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    pub fn position(&self, t: f64) -> f64 {
        self.amplitude * libm::sin(self.omega * t + self.phase)
    }
    pub fn velocity(&self, t: f64) -> f64 {
        self.amplitude * self.omega * libm::cos(self.omega * t + self.phase)
    }
    pub fn acceleration(&self, t: f64) -> f64 {
        -self.amplitude * self.omega * self.omega * libm::sin(self.omega * t + self.phase)
    }
}

/// `(1 + λx²)ẍ − λxẋ² + α²x`.
pub fn ode_residual(x: f64, v: f64, a: f64, alpha: f64, lambda: f64) -> f64 {
    (1.0 + lambda * x * x) * a - lambda * x * v * v + alpha * alpha * x
}

/// `ẍ = (λxẋ² − α²x)/(1 + λx²)`.
pub fn acceleration(x: f64, v: f64, alpha: f64, lambda: f64) -> f64 {
    (lambda * x * v * v - alpha * alpha * x) / (1.0 + lambda * x * x)
}

/// `½(ẋ² + α²x²)/(1 + λx²)`.
pub fn energy(s: &ClassicalState, alpha: f64, lambda: f64) -> f64 {
    0.5 * (s.v * s.v + alpha * alpha * s.x * s.x) / (1.0 + lambda * s.x * s.x)
}

/// Streaming velocity-Verlet integrator; yields the state after each step.
#[derive(Debug, Clone)]
pub struct Integrator {
    alpha: f64,
    lambda: f64,
    h: f64,
    u: f64,
    p: f64,
    force: f64,
    steps: u64,
    t0: f64,
}

impl Integrator {
    pub fn new(s0: ClassicalState, alpha: f64, lambda: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidStep(h));
        }
        if !lambda.is_finite() {
            return Err(Error::NonFiniteLambda(lambda));
        }
        let z = 1.0 + lambda * s0.x * s0.x;
        if !(z > 0.0) {
            return Err(Error::DomainExit { t: s0.t });
        }
        let u = to_u(s0.x, lambda);
        let mut it = Integrator {
            alpha,
            lambda,
            h,
            u,
            p: s0.v / libm::sqrt(z),
            force: 0.0,
            steps: 0,
            t0: s0.t,
        };
        it.force = it.force_at(u);
        Ok(it)
    }

    fn force_at(&self, u: f64) -> f64 {
        let a2 = self.alpha * self.alpha;
        if self.lambda > 0.0 {
            let s = libm::sqrt(self.lambda);
            let c = libm::cosh(s * u);
            -a2 * libm::tanh(s * u) / (c * c * s)
        } else if self.lambda < 0.0 {
            let s = libm::sqrt(-self.lambda);
            let c = libm::cos(s * u);
            -a2 * libm::tan(s * u) / (c * c * s)
        } else {
            -a2 * u
        }
    }

    pub fn state(&self) -> ClassicalState {
        let x = from_u(self.u, self.lambda);
        ClassicalState {
            x,
            v: self.p * libm::sqrt(1.0 + self.lambda * x * x),
            t: self.t0 + self.steps as f64 * self.h,
        }
    }

    pub fn step(&mut self) -> Result<ClassicalState> {
        let h = self.h;
        let half = self.p + 0.5 * h * self.force;
        self.u += h * half;
        self.steps += 1;
        if self.lambda < 0.0 && libm::sqrt(-self.lambda) * libm::fabs(self.u) >= 0.5 * PI {
            return Err(Error::DomainExit {
                t: self.t0 + self.steps as f64 * h,
            });
        }
        self.force = self.force_at(self.u);
        self.p = half + 0.5 * h * self.force;
        Ok(self.state())
    }
}

impl Iterator for Integrator {
    type Item = Result<ClassicalState>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.step())
    }
}

fn to_u(x: f64, lambda: f64) -> f64 {
    if lambda > 0.0 {
        let s = libm::sqrt(lambda);
        libm::asinh(s * x) / s
    } else if lambda < 0.0 {
        let s = libm::sqrt(-lambda);
        libm::asin(s * x) / s
    } else {
        x
    }
}

fn from_u(u: f64, lambda: f64) -> f64 {
    if lambda > 0.0 {
        let s = libm::sqrt(lambda);
        libm::sinh(s * u) / s
    } else if lambda < 0.0 {
        let s = libm::sqrt(-lambda);
        libm::sin(s * u) / s
    } else {
        u
    }
}

/// Trajectory over `[t₀, t₀ + T]` with step `h`, initial state included.
pub fn integrate(s0: ClassicalState, alpha: f64, lambda: f64, duration: f64, h: f64) -> Result<Vec<ClassicalState>> {
    let mut it = Integrator::new(s0, alpha, lambda, h)?;
    let steps = libm::round(duration / h) as usize;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(it.state());
    for _ in 0..steps {
        out.push(it.step()?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodMeasurement {
    pub period: f64,
    pub crossings: usize,
    /// Largest `|E(t) − E(0)|/E(0)` seen.
    pub energy_drift: f64,
}

/// Mean period from linearly interpolated upward zero crossings of `x`,
/// over `periods` full periods.
pub fn measure_period(s0: ClassicalState, alpha: f64, lambda: f64, h: f64, periods: usize) -> Result<PeriodMeasurement> {
    let e0 = energy(&s0, alpha, lambda);
    let denom = alpha * alpha - 2.0 * lambda * e0;
    if !(e0 > 0.0 && denom > 0.0) {
        return Err(Error::InvalidParams("orbit is not a bounded oscillation"));
    }
    let amp2 = 2.0 * e0 / denom;
    let expected = 2.0 * PI * libm::sqrt(1.0 + lambda * amp2) / alpha;
    let max_steps = libm::ceil(3.0 * (periods as f64 + 2.0) * expected / h) as u64;
    let mut it = Integrator::new(s0, alpha, lambda, h)?;
    let mut prev = it.state();
    let mut first = None;
    let mut last = 0.0;
    let mut crossings = 0;
    let mut drift = 0.0_f64;
    for _ in 0..max_steps {
        let s = it.step()?;
        drift = drift.max(libm::fabs(energy(&s, alpha, lambda) - e0) / e0);
        if prev.x < 0.0 && s.x >= 0.0 {
            let tc = prev.t + (s.t - prev.t) * (-prev.x) / (s.x - prev.x);
            if first.is_none() {
                first = Some(tc);
            }
            last = tc;
            crossings += 1;
            if crossings == periods + 1 {
                break;
            }
        }
        prev = s;
    }
    match first {
        Some(t0) if crossings == periods + 1 => Ok(PeriodMeasurement {
            period: (last - t0) / periods as f64,
            crossings,
            energy_drift: drift,
        }),
        _ => Err(Error::InvalidParams("too few zero crossings")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn start(x: f64) -> ClassicalState {
        ClassicalState { x, v: 0.0, t: 0.0 }
    }

    #[test]
    fn harmonic_case() {
        let h = 1e-3;
        let tr = integrate(start(1.0), 1.0, 0.0, 10.0, h).unwrap();
        for s in tr.iter().step_by(500) {
            assert!((s.x - libm::cos(s.t)).abs() < 1e-5);
        }
    }

    #[test]
    fn frequency_law() {
        let o = OrbitParams::new(1.0, 1.0, -0.5, 0.0).unwrap();
        assert!((o.omega() * o.omega() - 2.0).abs() < 1e-14);
        assert!(OrbitParams::new(2.0, 1.0, -0.25, 0.0).is_err());
        let m = measure_period(start(1.0), 1.0, 0.5, 1e-3, 50).unwrap();
        let exact = 2.0 * PI * libm::sqrt(1.5);
        assert!((m.period - exact).abs() < 1e-4 * exact);
    }

    #[test]
    fn exact_solution_residual() {
        for &(l, a) in &[(0.5, 1.0), (-0.5, 1.0), (0.1, 0.5), (-0.1, 0.5)] {
            let o = OrbitParams::new(a, 1.3, l, 0.4).unwrap();
            for i in 0..100 {
                let t = 0.173 * i as f64;
                let r = ode_residual(o.position(t), o.velocity(t), o.acceleration(t), 1.3, l);
                assert!(r.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&ClassicalState { x: 0.0, v: 2.0, t: 0.0 }, 1.0, 0.7), 2.0);
        assert!((energy(&start(1.5), 1.0, 0.4) - 0.5 * 2.25 / 1.9).abs() < 1e-15);
        let s = ClassicalState { x: 0.3, v: -0.2, t: 0.0 };
        assert!((energy(&s, 1.0, 0.0) - 0.5 * (0.04 + 0.09)).abs() < 1e-15);
    }

    #[test]
    fn acceleration_consistent() {
        let (x, v) = (0.7, -0.4);
        let a = acceleration(x, v, 1.1, -0.3);
        assert!(ode_residual(x, v, a, 1.1, -0.3).abs() < 1e-15);
    }

    #[test]
    fn stays_in_domain() {
        let tr = integrate(start(1.3), 1.0, -0.5, 50.0, 1e-3).unwrap();
        assert!(tr.iter().all(|s| 1.0 - 0.5 * s.x * s.x > 0.0));
        assert!(matches!(Integrator::new(start(1.0), 1.0, 0.0, 0.0), Err(Error::InvalidStep(_))));
    }

    #[test]
    fn unbounded_orbit_rejected() {
        // E ≥ α²/(2λ) escapes for λ > 0
        let s = ClassicalState { x: 0.0, v: 2.0, t: 0.0 };
        assert!(measure_period(s, 1.0, 0.5, 1e-3, 5).is_err());
    }
}
