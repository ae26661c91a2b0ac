//! Ladder operators, partner Hamiltonians and shape invariance.
//!
//! In adimensional form (lengths in `√(ħ/mα)`, energies in `ħα`) the
//! operators are, up to the common factor `1/√2`,
//!
//! ```text
//! A(b)  =  √z d/dy + b·y/√z,      A⁺(b) = −√z d/dy + b·y/√z,
//! ```
//!
//! with `b = α_k/α = 1 − kΛ` along the chain `α_{k+1} = α_k − ħλ/m`. On the
//! family `z^p·Q` they act as
//!
//! ```text
//! A(b):  z^p Q  ↦  z^{p−½}·[(b + 2Λp)·yQ + zQ′]
//! A⁺(b): z^p Q  ↦  z^{p−½}·[(b − 2Λp)·yQ − zQ′]
//! ```
//!
//! so every operator identity below is a coefficient comparison.

use alloc::vec::Vec;

use crate::hermite::{generating_coeffs, proportionality};
use crate::ladder_function::{z_poly, LadderFunction};
use crate::params::{classify, PhysicalParams};
use crate::poly::{Field, Poly, Rational};
use crate::quadrature::{integrate_measure, QuadratureSpec};
use crate::wavefunction::WaveFunction;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    A,
    APlus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderOperator<F> {
    kind: OperatorKind,
    b: F,
}

impl<F: Field> LadderOperator<F> {
    pub fn annihilation(b: F) -> Self {
        LadderOperator {
            kind: OperatorKind::A,
            b,
        }
    }

    pub fn creation(b: F) -> Self {
        LadderOperator {
            kind: OperatorKind::APlus,
            b,
        }
    }

    /// Operator of the `k`-th chain member, `b_k = 1 − kΛ`.
    pub fn at_level(kind: OperatorKind, k: u64, lambda: &F) -> Self {
        LadderOperator {
            kind,
            b: chain_b(k, lambda),
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    /// Unscaled action on `z^p·Q`; multiply by `1/√2` for the physical
    /// operator in units of `√(ħα)`.
    pub fn apply(&self, f: &LadderFunction<F>) -> LadderFunction<F> {
        let lambda = f.lambda().clone();
        let p = f.exponent().clone();
        let q = f.poly();
        let two_lp = F::from_i64(2) * lambda.clone() * p.clone();
        let zq = z_poly(&lambda) * q.derivative();
        let poly = match self.kind {
            OperatorKind::A => q.shift(1).scale(&(self.b.clone() + two_lp)) + zq,
            OperatorKind::APlus => q.shift(1).scale(&(self.b.clone() - two_lp)) - zq,
        };
        LadderFunction::new(lambda, p - half::<F>(), poly)
    }

    /// Λ = 0 action on `e^{−y²/2}·Q`, returning the new polynomial factor:
    /// `A: Q′ + (b − 1)yQ`, `A⁺: (b + 1)yQ − Q′`.
    pub fn apply_gaussian(&self, q: &Poly<F>) -> Poly<F> {
        let d = q.derivative();
        match self.kind {
            OperatorKind::A => d + q.shift(1).scale(&(self.b.clone() - F::one())),
            OperatorKind::APlus => q.shift(1).scale(&(self.b.clone() + F::one())) - d,
        }
    }
}

fn half<F: Field>() -> F {
    F::one().div_i64(2)
}

/// `b_k = 1 − kΛ`.
pub fn chain_b<F: Field>(k: u64, lambda: &F) -> F {
    F::one() - F::from_i64(k as i64) * lambda.clone()
}

/// `R(b) = b + Λ/2`, the shape-invariance remainder in units of `ħα`.
pub fn remainder<F: Field>(b: &F, lambda: &F) -> F {
    b.clone() + lambda.clone() * half::<F>()
}

/// `½[−z f″ − Λy f′ + c·(y²/z) f + d·f]`.
fn second_order<F: Field>(f: &LadderFunction<F>, c: F, d: F) -> Result<LadderFunction<F>> {
    let lambda = f.lambda().clone();
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let y = Poly::<F>::var();
    let y2 = Poly::monomial(F::one(), 2);
    let kinetic = d2
        .mul_poly(&z_poly(&lambda))
        .scale(&-F::one())
        .try_add(&d1.mul_poly(&y).scale(&-lambda))?;
    let potential = f.mul_poly(&y2).mul_z_power(-F::one()).scale(&c);
    let out = kinetic.try_add(&potential)?.try_add(&f.scale(&d))?;
    Ok(out.scale(&half::<F>()))
}

/// `Ĥ = −½z d²/dy² − ½Λy d/dy + ½(1+Λ)y²/z`, in units of `ħα`.
pub fn hamiltonian<F: Field>(f: &LadderFunction<F>) -> Result<LadderFunction<F>> {
    let l = f.lambda().clone();
    second_order(f, F::one() + l, F::zero())
}

/// `Ĥ₁(b) = ½A⁺(b)A(b) = ½[−zD² − ΛyD + b(b+Λ)y²/z − b]`.
pub fn hamiltonian_one<F: Field>(b: &F, f: &LadderFunction<F>) -> Result<LadderFunction<F>> {
    let l = f.lambda().clone();
    second_order(f, b.clone() * (b.clone() + l), -b.clone())
}

/// `Ĥ₂(b) = ½A(b)A⁺(b) = ½[−zD² − ΛyD + b(b−Λ)y²/z + b]`.
pub fn hamiltonian_two<F: Field>(b: &F, f: &LadderFunction<F>) -> Result<LadderFunction<F>> {
    let l = f.lambda().clone();
    second_order(f, b.clone() * (b.clone() - l), b.clone())
}

/// `½A⁺(A f) = Ĥ₁ f`.
pub fn factorization_check<F: Field>(b: &F, f: &LadderFunction<F>) -> Result<bool> {
    let composed = LadderOperator::creation(b.clone())
        .apply(&LadderOperator::annihilation(b.clone()).apply(f))
        .scale(&half::<F>());
    Ok(composed.same_function(&hamiltonian_one(b, f)?))
}

/// `½(A(b)A⁺(b) − A⁺(b₁)A(b₁)) f = R(b₁) f` with `b₁ = b − Λ`.
pub fn shape_invariance_check<F: Field>(b: &F, f: &LadderFunction<F>) -> Result<bool> {
    let lambda = f.lambda().clone();
    let b1 = b.clone() - lambda.clone();
    let upper = LadderOperator::annihilation(b.clone()).apply(&LadderOperator::creation(b.clone()).apply(f));
    let lower = LadderOperator::creation(b1.clone()).apply(&LadderOperator::annihilation(b1.clone()).apply(f));
    let lhs = upper.try_sub(&lower)?.scale(&half::<F>());
    Ok(lhs.same_function(&f.scale(&remainder(&b1, &lambda))))
}

/// Adimensional chain `b_k`, `R(b_k)` and partial sums `E_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeChain<F> {
    lambda: F,
    len: u64,
}

impl<F: Field> ShapeChain<F> {
    pub fn new(lambda: F, len: u64) -> Self {
        ShapeChain { lambda, len }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn b(&self, k: u64) -> F {
        chain_b(k, &self.lambda)
    }

    pub fn remainder(&self, k: u64) -> F {
        remainder(&self.b(k), &self.lambda)
    }

    /// `E_0 … E_len`, `E_n = Σ_{k=1}^{n} R(b_k)`.
    pub fn energies(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(self.len as usize + 1);
        let mut sum = F::zero();
        out.push(sum.clone());
        for k in 1..=self.len {
            sum = sum + self.remainder(k);
            out.push(sum.clone());
        }
        out
    }

    /// Physical `α_k = α − (ħλ/m)k`.
    pub fn alpha(p: &PhysicalParams, k: u64) -> f64 {
        p.alpha() - p.hbar() * p.lambda() / p.mass() * k as f64
    }
}

/// `Ψ_n ∝ A⁺(b_0)A⁺(b_1)…A⁺(b_{n−1}) z^{−b_n/(2Λ)}`, the last factor being
/// the state annihilated by `A(b_n)`. The result carries the exponent
/// `−1/(2Λ)`.
pub fn build_state<F: Field>(n: u64, lambda: &F) -> Result<LadderFunction<F>> {
    let l = lambda.to_f64();
    let d = classify(l)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if !d.is_bound(n) {
        return Err(Error::UnboundState {
            m: n,
            max: d.max_bound().unwrap_or(u64::MAX),
        });
    }
    let top = chain_b(n, lambda);
    let exponent = -(top / (F::from_i64(2) * lambda.clone()));
    let mut f = LadderFunction::power(lambda.clone(), exponent);
    for k in (0..n).rev() {
        f = LadderOperator::at_level(OperatorKind::APlus, k, lambda).apply(&f);
    }
    Ok(f)
}

/// `(2y − d/dy)ⁿ·1`, the Λ = 0 ladder route (classical Hermite `Hₙ`).
pub fn build_state_gaussian<F: Field>(n: u64) -> Poly<F> {
    let op = LadderOperator::creation(F::one());
    (0..n).fold(Poly::constant(F::one()), |q, _| op.apply_gaussian(&q))
}

/// [`build_state`] rescaled to the generating normalization `H̃ₙ`.
pub fn build_wavefunction(n: u64, lambda: &Rational) -> Result<WaveFunction> {
    let state = build_state(n, lambda)?;
    let target = generating_coeffs(n as usize, lambda)
        .pop()
        .expect("non-empty family")
        .into_poly();
    let ratio = proportionality(&target, state.poly()).ok_or(Error::NormalizationMismatch {
        expected: "generating",
        found: "ladder",
    })?;
    let poly = state.poly().scale(&ratio).to_f64();
    WaveFunction::from_poly(n, lambda.to_f64(), poly)
}

/// `z^p √z d/dy [z^{−p} g] = √z g′ − 2pΛ·(y/√z)·g`, compared exactly.
pub fn proposition2_check<F: Field>(p: &F, g: &LadderFunction<F>) -> Result<bool> {
    let h = half::<F>();
    let lhs = g
        .mul_z_power(-p.clone())
        .derivative()
        .mul_z_power(h.clone() + p.clone());
    let lambda = g.lambda().clone();
    let term = g
        .mul_poly(&Poly::var())
        .mul_z_power(-h.clone())
        .scale(&(F::from_i64(2) * p.clone() * lambda));
    let rhs = g.derivative().mul_z_power(h).try_sub(&term)?;
    Ok(lhs.same_function(&rhs))
}

/// `[A, A⁺] = ħα·(1 − λx²/(1 + λx²))`, physical units.
pub fn commutator(x: f64, p: &PhysicalParams) -> f64 {
    let w = p.lambda() * x * x;
    p.energy_unit() * (1.0 - w / (1.0 + w))
}

/// `[A, A⁺]` at `x` from operator composition on a test function `g`
/// (adimensional, `b = 1`), divided by `g` and scaled to physical units.
pub fn commutator_by_composition(x: f64, p: &PhysicalParams, g: &LadderFunction<f64>) -> f64 {
    let y = p.adim_map().to_y(x);
    let a = LadderOperator::annihilation(1.0);
    let ap = LadderOperator::creation(1.0);
    let ag = a.apply(&ap.apply(g));
    let pg = ap.apply(&a.apply(g));
    // both carry exponent s − 1; subtract as polynomials
    let diff = LadderFunction::new(*g.lambda(), *ag.exponent(), ag.poly().clone() - pg.poly().clone());
    0.5 * p.energy_unit() * diff.evaluate(y) / g.evaluate(y)
}

/// `⟨A⁺f, g⟩_μ − ⟨f, Ag⟩_μ` by quadrature.
pub fn adjointness_defect(b: f64, f: &LadderFunction<f64>, g: &LadderFunction<f64>) -> Result<f64> {
    let lambda = *f.lambda();
    let degree = f.poly().degree().unwrap_or(0) + g.poly().degree().unwrap_or(0) + 2;
    let spec = QuadratureSpec::for_degree(lambda, degree as u64, 1e-13)?;
    let apf = LadderOperator::creation(b).apply(f);
    let ag = LadderOperator::annihilation(b).apply(g);
    let left = integrate_measure(|y| apf.evaluate(y) * g.evaluate(y), &spec)?;
    let right = integrate_measure(|y| f.evaluate(y) * ag.evaluate(y), &spec)?;
    Ok(left - right)
}

/// Partner potentials of `Ĥ₁ = A⁺A` and `Ĥ₂ = AA⁺`, physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartnerPotentials {
    params: PhysicalParams,
}

impl PartnerPotentials {
    pub fn new(params: PhysicalParams) -> Self {
        PartnerPotentials { params }
    }

    /// `W_λ = x/√(1 + λx²)`.
    pub fn w(&self, x: f64) -> f64 {
        x / libm::sqrt(1.0 + self.params.lambda() * x * x)
    }

    /// `α√(m/2)·W_λ`.
    pub fn superpotential(&self, x: f64) -> f64 {
        self.params.alpha() * libm::sqrt(0.5 * self.params.mass()) * self.w(x)
    }

    /// `U₁ = ½mα(α + ħλ/m)W² − ½ħα`.
    pub fn u1(&self, x: f64) -> f64 {
        let p = &self.params;
        let w = self.w(x);
        0.5 * p.mass() * p.alpha() * (p.alpha() + p.hbar() * p.lambda() / p.mass()) * w * w - 0.5 * p.energy_unit()
    }

    /// `U₂ = ½mα(α − ħλ/m)W² + ½ħα`.
    pub fn u2(&self, x: f64) -> f64 {
        let p = &self.params;
        let w = self.w(x);
        0.5 * p.mass() * p.alpha() * (p.alpha() - p.hbar() * p.lambda() / p.mass()) * w * w + 0.5 * p.energy_unit()
    }
}
