//! Closed-form spectrum.
//!
//! Adimensional levels (units of `ħα`) are `e_m = (m + ½) − ½m²Λ` for every
//! sign of Λ; for Λ > 0 only `m ≤ N_Λ` are normalizable. The ladder route
//! reaches the same numbers by summing the shape-invariance remainders
//! `R(α_k)` along `α_k = α − (ħλ/m)k`.

use alloc::vec::Vec;

use crate::params::{classify, PhysicalParams, SignClass};
use crate::poly::{rat, Rational, Ring};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub m: u64,
    pub energy: f64,
    pub bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    lambda: f64,
    levels: Vec<EnergyLevel>,
}

impl SpectrumTable {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn levels(&self) -> &[EnergyLevel] {
        &self.levels
    }

    /// `Δ_m = e_{m+1} − e_m`, one shorter than the level list.
    pub fn spacings(&self) -> Vec<f64> {
        self.levels
            .windows(2)
            .map(|w| w[1].energy - w[0].energy)
            .collect()
    }

    pub fn bound_levels(&self) -> impl Iterator<Item = &EnergyLevel> {
        self.levels.iter().filter(|l| l.bound)
    }
}

/// `e_m(Λ)` without regard to normalizability; also the continuous curve
/// when `m` is not an integer.
pub fn level_energy(lambda: f64, m: f64) -> f64 {
    m + 0.5 - 0.5 * m * m * lambda
}

pub fn level_energy_exact(lambda: &Rational, m: u64) -> Rational {
    let m = Rational::from_i64(m as i64);
    m.clone() + rat(1, 2) - rat(1, 2) * m.clone() * m * lambda.clone()
}

/// Closed-form spacing `e_{m+1} − e_m = 1 − (m + ½)Λ`.
pub fn spacing(lambda: f64, m: u64) -> f64 {
    1.0 - (m as f64 + 0.5) * lambda
}

/// Levels `m = 0..=m_max`; for Λ > 0 indices beyond `N_Λ` are included but
/// flagged unbound.
pub fn energies(lambda: f64, m_max: u64) -> Result<SpectrumTable> {
    let d = classify(lambda)?;
    let levels = (0..=m_max)
        .map(|m| EnergyLevel {
            m,
            energy: level_energy(lambda, m as f64),
            bound: d.is_bound(m),
        })
        .collect();
    Ok(SpectrumTable { lambda, levels })
}

/// Only the normalizable levels; Λ ≤ 0 needs an explicit `m_max`.
pub fn bound_energies(lambda: f64, m_max_if_unbounded: u64) -> Result<SpectrumTable> {
    let d = classify(lambda)?;
    let m_max = d.max_bound().unwrap_or(m_max_if_unbounded);
    energies(lambda, m_max)
}

/// `N_Λ + 1` for Λ > 0.
pub fn bound_count(lambda: f64) -> Result<u64> {
    let d = classify(lambda)?;
    match d.sign_class() {
        SignClass::Positive => Ok(d.bound_count().expect("positive lambda has a cutoff")),
        _ => Err(Error::NonPositiveLambda(lambda)),
    }
}

/// `E_n` of `Ĥ₁` in physical units for `n = 0..=n_max`, by literal summation
/// `E_n = Σ_{k=1}^{n} R(α_k)`, `R(α) = ħα + ħ²λ/(2m)`, `α_k = α − (ħλ/m)k`.
pub fn ladder_energies(p: &PhysicalParams, n_max: u64) -> Vec<f64> {
    let (m, hbar, lambda) = (p.mass(), p.hbar(), p.lambda());
    let step = hbar * lambda / m;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut sum = 0.0;
    out.push(sum);
    for k in 1..=n_max {
        let alpha_k = p.alpha() - step * k as f64;
        sum += hbar * alpha_k + 0.5 * hbar * hbar * lambda / m;
        out.push(sum);
    }
    out
}

/// Adimensional ladder energies in exact arithmetic, with `b_k = 1 − kΛ`
/// and `R(b_k) = b_k + Λ/2` (units of `ħα`).
pub fn ladder_energies_exact(lambda: &Rational, n_max: u64) -> Vec<Rational> {
    let half = rat(1, 2);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut sum = Rational::zero();
    out.push(sum.clone());
    for k in 1..=n_max {
        let b_k = Rational::one() - Rational::from_i64(k as i64) * lambda.clone();
        sum = sum + b_k + half.clone() * lambda.clone();
        out.push(sum.clone());
    }
    out
}
