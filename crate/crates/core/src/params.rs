//! Physical and adimensional parameters.
//!
//! The physical system is fixed by a mass `m`, a frequency `α`, Planck's
//! constant `ħ`, and the deformation `λ` (inverse length squared). Everything
//! else in the crate works with the adimensional pair `(y, Λ)`, where
//! `x = √(ħ/mα)·y` and `λ = (mα/ħ)·Λ`, so that `1 + λx² = 1 + Λy²`.

use crate::poly::{Rational, Ring};
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    alpha: f64,
    hbar: f64,
    lambda: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, alpha: f64, hbar: f64, lambda: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParams("mass must be positive"));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParams("alpha must be positive"));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParams("hbar must be positive"));
        }
        if !lambda.is_finite() {
            return Err(Error::NonFiniteLambda(lambda));
        }
        Ok(PhysicalParams {
            mass,
            alpha,
            hbar,
            lambda,
        })
    }

    /// `m = α = ħ = 1`, so that `x = y` and `λ = Λ`.
    pub fn unit(lambda: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, lambda)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `β = mα/ħ`.
    pub fn beta(&self) -> f64 {
        self.mass * self.alpha / self.hbar
    }

    /// The quantum coupling `g = mα² + λħα = mα(α + ħλ/m)`.
    pub fn coupling(&self) -> f64 {
        self.mass * self.alpha * (self.alpha + self.hbar * self.lambda / self.mass)
    }

    /// `ħα`, the energy unit of the adimensional problem.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.alpha
    }

    pub fn adim_map(&self) -> AdimMap {
        AdimMap {
            length: libm::sqrt(self.hbar / (self.mass * self.alpha)),
            beta: self.beta(),
        }
    }

    /// Adimensional deformation `Λ = λħ/(mα)`.
    pub fn adim_lambda(&self) -> f64 {
        self.lambda / self.beta()
    }
}

/// The linear map between `(x, λ)` and `(y, Λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdimMap {
    length: f64,
    beta: f64,
}

impl AdimMap {
    /// `√(ħ/mα)`.
    pub fn length_scale(&self) -> f64 {
        self.length
    }

    pub fn to_y(&self, x: f64) -> f64 {
        x / self.length
    }

    pub fn to_x(&self, y: f64) -> f64 {
        y * self.length
    }

    pub fn to_big_lambda(&self, lambda: f64) -> f64 {
        lambda / self.beta
    }

    pub fn to_small_lambda(&self, big_lambda: f64) -> f64 {
        big_lambda * self.beta
    }
}

/// `(x, λ) ↦ (y, Λ)` for the given parameters.
pub fn to_adimensional(p: &PhysicalParams, x: f64) -> (f64, f64) {
    let map = p.adim_map();
    (map.to_y(x), map.to_big_lambda(p.lambda))
}

/// Exact form of the map on squared lengths: with `β = mα/ħ` rational,
/// `y² = βx²` and `Λ = λ/β`, hence `Λy² = λx²` identically.
pub fn to_adimensional_exact(beta: &Rational, x_sq: &Rational, lambda: &Rational) -> (Rational, Rational) {
    (beta.clone() * x_sq.clone(), lambda.clone() / beta.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Negative,
    Zero,
    Positive,
}

/// Adimensional deformation parameter together with its derived domain and
/// bound-state data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParam {
    lambda: f64,
    sign: SignClass,
}

impl DeformationParam {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn sign_class(&self) -> SignClass {
        self.sign
    }

    /// `a_Λ = 1/√|Λ|`, the half-width of the domain when Λ < 0.
    pub fn half_width(&self) -> Option<f64> {
        (self.sign == SignClass::Negative).then(|| 1.0 / libm::sqrt(-self.lambda))
    }

    /// `m_Λ = 1/Λ` when Λ > 0.
    pub fn cutoff(&self) -> Option<f64> {
        (self.sign == SignClass::Positive).then(|| 1.0 / self.lambda)
    }

    /// `N_Λ`, the greatest integer strictly below `1/Λ`, when Λ > 0.
    pub fn max_bound(&self) -> Option<u64> {
        (self.sign == SignClass::Positive).then(|| max_bound_index(self.lambda))
    }

    pub fn is_bound(&self, m: u64) -> bool {
        self.max_bound().is_none_or(|n| m <= n)
    }

    /// Number of normalizable states, `None` when infinite.
    pub fn bound_count(&self) -> Option<u64> {
        self.max_bound().map(|n| n + 1)
    }

    /// Whether `y` lies in the open domain.
    pub fn contains(&self, y: f64) -> bool {
        match self.half_width() {
            Some(a) => libm::fabs(y) < a,
            None => y.is_finite(),
        }
    }
}

pub fn classify(lambda: f64) -> Result<DeformationParam> {
    if !lambda.is_finite() {
        return Err(Error::NonFiniteLambda(lambda));
    }
    let sign = if lambda > 0.0 {
        SignClass::Positive
    } else if lambda < 0.0 {
        SignClass::Negative
    } else {
        SignClass::Zero
    };
    Ok(DeformationParam { lambda, sign })
}

/// Largest `m` with `m·Λ < 1`. A float Λ within a few ulps of `1/k` is
/// treated as exactly `1/k`, so the borderline state `m = k` is excluded.
fn max_bound_index(lambda: f64) -> u64 {
    let inv = 1.0 / lambda;
    if inv >= 9.0e15 {
        return u64::MAX;
    }
    let k = libm::round(inv);
    if k >= 1.0 && libm::fabs(k * lambda - 1.0) <= 8.0 * f64::EPSILON {
        return k as u64 - 1;
    }
    let mut m = libm::floor(inv) as u64;
    while m > 0 && (m as f64) * lambda >= 1.0 {
        m -= 1;
    }
    while ((m + 1) as f64) * lambda < 1.0 {
        m += 1;
    }
    m
}

/// `N_Λ` for an exact positive rational Λ; `None` for Λ ≤ 0.
pub fn max_bound_exact(lambda: &Rational) -> Option<u64> {
    if !lambda.is_positive() {
        return None;
    }
    let inv = Rational::one() / lambda.clone();
    let fl = inv.floor().to_integer();
    let n = if inv.is_integer() { fl - 1 } else { fl };
    n.to_u64()
}

/// Exponent of the large-|y| tail of `Ψ_m² / √(1+Λy²)` as a power of `y`:
/// `2m − 1 − 2/Λ`. The norm integral converges iff this is `< −1`.
pub fn normalizability_exponent(lambda: f64, m: u64) -> f64 {
    2.0 * m as f64 - 1.0 - 2.0 / lambda
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn cutoff_examples() {
        assert_eq!(classify(0.3).unwrap().max_bound(), Some(3));
        assert_eq!(classify(0.5).unwrap().max_bound(), Some(1));
        assert_eq!(classify(0.15).unwrap().max_bound(), Some(6));
        assert_eq!(classify(1.0).unwrap().max_bound(), Some(0));
        assert_eq!(classify(1.0 / 3.0).unwrap().max_bound(), Some(2));
        assert_eq!(classify(0.1).unwrap().max_bound(), Some(9));
        assert_eq!(classify(2.5).unwrap().max_bound(), Some(0));
    }

    #[test]
    fn zero_and_negative() {
        let z = classify(0.0).unwrap();
        assert_eq!(z.sign_class(), SignClass::Zero);
        assert_eq!(z.max_bound(), None);
        assert_eq!(z.bound_count(), None);
        let n = classify(-0.25).unwrap();
        assert_eq!(n.half_width(), Some(2.0));
        assert!(n.contains(1.99) && !n.contains(2.0));
        assert!(classify(f64::NAN).is_err());
        assert!(classify(f64::INFINITY).is_err());
    }

    #[test]
    fn exact_cutoff() {
        assert_eq!(max_bound_exact(&rat(1, 2)), Some(1));
        assert_eq!(max_bound_exact(&rat(3, 10)), Some(3));
        assert_eq!(max_bound_exact(&rat(1, 10)), Some(9));
        assert_eq!(max_bound_exact(&rat(-1, 10)), None);
    }

    #[test]
    fn exponent_oracle_matches_cutoff() {
        for &l in &[0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.45, 0.5, 0.8, 1.0, 1.7] {
            let n = classify(l).unwrap().max_bound().unwrap();
            for m in 0..=n {
                assert!(normalizability_exponent(l, m) < -1.0 + 1e-12, "l={l} m={m}");
            }
            assert!(normalizability_exponent(l, n + 1) >= -1.0 - 1e-9, "l={l}");
        }
    }

    #[test]
    fn adimensional_map() {
        let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.3).unwrap();
        assert_eq!(to_adimensional(&p, 2.0), (2.0, 0.3));
        let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let (y, l) = to_adimensional(&p, 1.0);
        assert!((y - libm::sqrt(2.0)).abs() < 1e-15);
        assert!((l - 0.5).abs() < 1e-15);
        assert_eq!(to_adimensional(&p, 0.0).0, 0.0);
        let map = p.adim_map();
        assert!((map.to_x(map.to_y(0.7)) - 0.7).abs() < 1e-15);
        assert!((p.coupling() - p.mass() * p.alpha() * (p.alpha() + p.hbar() * p.lambda() / p.mass())).abs() < 1e-15);
    }

    #[test]
    fn exact_map_preserves_z() {
        let beta = rat(7, 3);
        let (x_sq, lambda) = (rat(5, 2), rat(-2, 9));
        let (y_sq, big) = to_adimensional_exact(&beta, &x_sq, &lambda);
        assert_eq!(Rational::one() + big * y_sq, Rational::one() + lambda * x_sq);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
    }
}
