//! Λ-deformed Hermite polynomials.
//!
//! Three construction routes that share no code:
//!
//! - [`series_solution`]: terminating power series of
//!   `(1+Λy²)h″ + (Λ−2)yh′ + (2p − Λp²)h = 0`;
//! - [`rodrigues`]: `(−1)ⁿ z^{1/Λ+1/2} dⁿ/dyⁿ [zⁿ z^{−(1/Λ+1/2)}]`, computed
//!   by exact differentiation on the `z^s·Q` family;
//! - [`generating_coeffs`]: Taylor coefficients of
//!   `(1 + Λ(2ty − t²))^{1/Λ} = Σ H̃ₙ tⁿ/n!` via the binomial series.
//!
//! All three are generic over the coefficient ring, so the same code runs
//! with a fixed rational Λ (`C = Rational`), with Λ left symbolic
//! (`C = LamExpr`, `lambda = LamExpr::var()`), or in `f64`. The generating
//! family `H̃ₙ` is the canonical normalization used by the rest of the crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::ladder_function::LadderFunction;
use crate::poly::{LamExpr, LambdaRatio, Poly, Rational, Ring};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Even series solution with `a₀ = 1`.
    SeriesEven,
    /// Odd series solution with `a₁ = 1`.
    SeriesOdd,
    Rodrigues,
    Generating,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::SeriesEven => "series_h1",
            Normalization::SeriesOdd => "series_h2",
            Normalization::Rodrigues => "rodrigues",
            Normalization::Generating => "generating",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A member of the deformed Hermite family: nominal index `n`, the route it
/// came from, and its coefficients in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPoly<C> {
    n: usize,
    normalization: Normalization,
    poly: Poly<C>,
}

impl<C: Ring> LambdaPoly<C> {
    pub fn new(n: usize, normalization: Normalization, poly: Poly<C>) -> Self {
        debug_assert!(poly.has_parity(n % 2 == 1), "parity violated for n = {n}");
        LambdaPoly {
            n,
            normalization,
            poly,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<C> {
        self.poly
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    /// Actual degree, which drops below `n` where a leading factor vanishes.
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degree() != Some(self.n)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> LambdaPoly<D> {
        LambdaPoly {
            n: self.n,
            normalization: self.normalization,
            poly: self.poly.map(f),
        }
    }

    /// Scaled so the leading coefficient is positive (for polynomials in Λ:
    /// positive for small Λ > 0).
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if self.poly.leading().is_some_and(|c| c.small_sign() < 0) {
            out.poly = -out.poly;
        }
        out
    }
}

impl LambdaPoly<LamExpr> {
    /// Specializes a generic-Λ polynomial to a rational Λ.
    pub fn at(&self, lambda: &Rational) -> LambdaPoly<Rational> {
        self.map(|c| c.eval(lambda))
    }

    pub fn at_f64(&self, lambda: f64) -> LambdaPoly<f64> {
        self.map(|c| c.eval_f64(lambda))
    }
}

impl LambdaPoly<Rational> {
    pub fn to_f64(&self) -> LambdaPoly<f64> {
        self.map(crate::poly::Field::to_f64)
    }
}

fn lin<C: Ring>(a: i64, b: i64, lambda: &C) -> C {
    // a − bΛ
    C::from_i64(a) - C::from_i64(b) * lambda.clone()
}

/// Degree-`p` polynomial solution from the two-step recursion
/// `a_{k+2} = −a_k [k(Λk − 2) + (2e − 1)] / ((k+2)(k+1))` with
/// `2e − 1 = 2p − Λp²`. Normalized by `a₀ = 1` (even) or `a₁ = 1` (odd).
pub fn series_solution<C: Ring>(p: usize, lambda: &C) -> LambdaPoly<C> {
    let start = p % 2;
    let two_e_minus_one = lin(2 * p as i64, (p * p) as i64, lambda);
    let mut a = vec![C::zero(); p + 1];
    a[start] = C::one();
    let mut k = start;
    while k + 2 <= p {
        let bracket = C::from_i64(k as i64) * (lambda.clone() * C::from_i64(k as i64) - C::from_i64(2))
            + two_e_minus_one.clone();
        a[k + 2] = (-(a[k].clone() * bracket)).div_i64(((k + 2) * (k + 1)) as i64);
        k += 2;
    }
    let norm = if start == 0 {
        Normalization::SeriesEven
    } else {
        Normalization::SeriesOdd
    };
    LambdaPoly::new(p, norm, Poly::new(a))
}

/// The first `terms` coefficients of the (generally non-terminating) series
/// solution for an arbitrary `2e − 1`, starting from `a₀ = 1` or `a₁ = 1`.
pub fn series_coefficients<C: Ring>(two_e_minus_one: &C, lambda: &C, parity: Parity, terms: usize) -> Vec<C> {
    let mut a = vec![C::zero(); terms];
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    if start >= terms {
        return a;
    }
    a[start] = C::one();
    let mut k = start;
    while k + 2 < terms {
        let bracket = C::from_i64(k as i64) * (lambda.clone() * C::from_i64(k as i64) - C::from_i64(2))
            + two_e_minus_one.clone();
        a[k + 2] = (-(a[k].clone() * bracket)).div_i64(((k + 2) * (k + 1)) as i64);
        k += 2;
    }
    a
}

/// Rodrigues route for a fixed nonzero rational Λ.
pub fn rodrigues(n: usize, lambda: &Rational) -> Result<LambdaPoly<Rational>> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let s = Rational::one() / lambda.clone() + crate::poly::rat(1, 2);
    let mut f = LadderFunction::power(lambda.clone(), Rational::from_i64(n as i64) - s.clone());
    for _ in 0..n {
        f = f.derivative();
    }
    let f = f.mul_z_power(s);
    assert!(f.exponent().is_zero(), "Rodrigues output is not a polynomial");
    let poly = if n % 2 == 1 {
        -f.poly().clone()
    } else {
        f.poly().clone()
    };
    Ok(LambdaPoly::new(n, Normalization::Rodrigues, poly))
}

/// `H̃₀ … H̃_{n_max}` from the generating function.
///
/// With `(2ty − t²)^k = t^k Σ_j C(k,j)(2y)^{k−j}(−t)^j`, the `tⁿ` coefficient
/// collects `k + j = n`, and the binomial weight of `(1 + Λw)^{1/Λ}` is
/// `Π_{i<k}(1 − iΛ)/k!`, a polynomial in Λ.
pub fn generating_coeffs<C: Ring>(n_max: usize, lambda: &C) -> Vec<LambdaPoly<C>> {
    // falling[k] = Π_{i<k} (1 − iΛ)
    let mut falling = Vec::with_capacity(n_max + 1);
    falling.push(C::one());
    for k in 1..=n_max {
        let next = falling[k - 1].clone() * lin(1, (k - 1) as i64, lambda);
        falling.push(next);
    }
    (0..=n_max)
        .map(|n| {
            let mut coeffs = vec![C::zero(); n + 1];
            for k in n.div_ceil(2)..=n {
                let j = n - k;
                let power = 2 * k - n;
                // n!/(j!·power!) · 2^power · (−1)^j, built stepwise in C
                let mut factor = C::one();
                for i in 1..=n {
                    factor = factor * C::from_i64(i as i64);
                }
                for i in 1..=j {
                    factor = factor.div_i64(i as i64);
                }
                for i in 1..=power {
                    factor = factor.div_i64(i as i64) * C::from_i64(2);
                }
                if j % 2 == 1 {
                    factor = -factor;
                }
                coeffs[power] = coeffs[power].clone() + factor * falling[k].clone();
            }
            LambdaPoly::new(n, Normalization::Generating, Poly::new(coeffs))
        })
        .collect()
}

/// `H̃ₙ₊₁ = 2y(1 − nΛ)H̃ₙ − n(2 − (n−1)Λ)H̃ₙ₋₁`, for `n ≥ 1`.
pub fn three_term_next<C: Ring>(
    current: &LambdaPoly<C>,
    previous: &LambdaPoly<C>,
    n: usize,
    lambda: &C,
) -> Result<LambdaPoly<C>> {
    for p in [current, previous] {
        if p.normalization != Normalization::Generating {
            return Err(Error::NormalizationMismatch {
                expected: Normalization::Generating.as_str(),
                found: p.normalization.as_str(),
            });
        }
    }
    debug_assert!(n >= 1 && current.n == n && previous.n + 1 == n);
    let a = current.poly.shift(1).scale(&(C::from_i64(2) * lin(1, n as i64, lambda)));
    let b = previous
        .poly
        .scale(&(C::from_i64(n as i64) * lin(2, n as i64 - 1, lambda)));
    Ok(LambdaPoly::new(n + 1, Normalization::Generating, a - b))
}

/// Checks `H̃′ₙ₊₂ + (n+2)Λ[2yH̃′ₙ₊₁ − (n+1)H̃′ₙ] = 2(n+2)H̃ₙ₊₁` exactly.
/// `family[k]` must be `H̃_k`.
pub fn derivative_relation_check<C: Ring>(family: &[LambdaPoly<C>], n: usize, lambda: &C) -> Result<bool> {
    if family.len() < n + 3 {
        return Err(Error::FamilyTooShort {
            needed: n + 3,
            got: family.len(),
        });
    }
    let d0 = family[n].poly.derivative();
    let d1 = family[n + 1].poly.derivative();
    let d2 = family[n + 2].poly.derivative();
    let k = (n + 2) as i64;
    let bracket = d1.shift(1).scale(&C::from_i64(2)) - d0.scale(&C::from_i64(n as i64 + 1));
    let lhs = d2 + bracket.scale(&(C::from_i64(k) * lambda.clone()));
    let rhs = family[n + 1].poly.scale(&C::from_i64(2 * k));
    Ok((lhs - rhs).is_zero())
}

/// Coefficient rings in which a quotient of two elements can be formed.
pub trait ScaleRatio: Ring {
    type Ratio;
    fn make_ratio(num: Self, den: Self) -> Self::Ratio;
}

impl ScaleRatio for Rational {
    type Ratio = Rational;
    fn make_ratio(num: Self, den: Self) -> Rational {
        num / den
    }
}

impl ScaleRatio for LamExpr {
    type Ratio = LambdaRatio;
    fn make_ratio(num: Self, den: Self) -> LambdaRatio {
        LambdaRatio::new(num, den)
    }
}

/// The scalar `c` with `a = c·b`, if one exists. In generic-Λ mode `c` may be
/// a rational function of Λ. `None` when `b` is zero or the two are not
/// proportional.
pub fn proportionality<C: ScaleRatio>(a: &Poly<C>, b: &Poly<C>) -> Option<C::Ratio> {
    let lead_b = b.leading()?.clone();
    let k = b.degree()?;
    let num = a.coeff(k);
    if a.degree().is_some_and(|d| d > k) {
        return None;
    }
    // a·lead_b == b·num  ⇔  a = (num/lead_b)·b
    if (a.scale(&lead_b) - b.scale(&num)).is_zero() {
        Some(C::make_ratio(num, lead_b))
    } else {
        None
    }
}

/// `c_m = Π_{r=m}^{2m−1} (2 − rΛ)`, the leading coefficient of the
/// Rodrigues polynomial.
pub fn leading_coefficient<C: Ring>(m: usize, lambda: &C) -> C {
    (m..2 * m).fold(C::one(), |acc, r| acc * lin(2, r as i64, lambda))
}

/// `(1+Λy²)h″ + (Λ−2)yh′ + (2p − Λp²)h`.
pub fn ode_residual<C: Ring>(h: &Poly<C>, p: usize, lambda: &C) -> Poly<C> {
    let z = Poly::new(vec![C::one(), C::zero(), lambda.clone()]);
    let d1 = h.derivative();
    let d2 = d1.derivative();
    let eig = lin(2 * p as i64, (p * p) as i64, lambda);
    z * d2 + d1.shift(1).scale(&(lambda.clone() - C::from_i64(2))) + h.scale(&eig)
}
