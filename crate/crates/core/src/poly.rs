//! Coefficient rings and dense univariate polynomials.
//!
//! One [`Poly`] type plays three roles: polynomials in `y` with exact rational
//! coefficients (a fixed rational Λ), polynomials in Λ itself ([`LamExpr`]),
//! and polynomials in `y` whose coefficients are polynomials in Λ
//! (`Poly<LamExpr>`, the generic-Λ mode). `f64` coefficients cover the
//! numerical paths.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Exact rational scalar in canonical reduced form.
pub type Rational = BigRational;

/// A polynomial in the deformation parameter Λ with rational coefficients.
pub type LamExpr = Poly<Rational>;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The exact rational carrying the same binary value as `x`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// Commutative ring with unit that also supports exact division by nonzero
/// integers (every coefficient ring used here contains ℚ or is `f64`).
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn div_i64(&self, d: i64) -> Self;
    /// Sign of the value; for polynomials in Λ, the sign for small positive Λ.
    fn small_sign(&self) -> i8;
}

pub trait Field: Ring + Div<Output = Self> {
    fn to_f64(&self) -> f64;
    /// `Some(k)` when the value is the integer `k` (to rounding, for `f64`).
    fn as_integer(&self) -> Option<i64>;
}

impl Ring for Rational {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn div_i64(&self, d: i64) -> Self {
        self / BigInt::from(d)
    }
    fn small_sign(&self) -> i8 {
        if Ring::is_zero(self) {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl Field for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn div_i64(&self, d: i64) -> Self {
        self / d as f64
    }
    fn small_sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
}

impl Field for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn as_integer(&self) -> Option<i64> {
        let r = libm::round(*self);
        let scale = if libm::fabs(r) > 1.0 { libm::fabs(r) } else { 1.0 };
        if libm::fabs(*self - r) <= 1e-9 * scale {
            Some(r as i64)
        } else {
            None
        }
    }
}

/// Dense polynomial, coefficients indexed by power, trailing zeros trimmed.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    /// `c·v^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// True degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_i64(k as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(-v)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// True when every coefficient of the opposite parity is exactly zero.
    pub fn has_parity(&self, odd: bool) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| (k % 2 == 1) == odd || c.is_zero())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(C::one()), |acc, _| acc * self.clone())
    }

    /// Formats with the given variable name, highest power first.
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, var }
    }
}

impl<C: Field> Poly<C> {
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(Field::to_f64)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(C::one())
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(C::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn div_i64(&self, d: i64) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.div_i64(d)).collect())
    }
    fn small_sign(&self) -> i8 {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map_or(0, Ring::small_sign)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    /// Polynomials printed bare are taken to be in Λ, written `L`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("L").fmt(f)
    }
}

pub struct PolyDisplay<'a, C> {
    poly: &'a Poly<C>,
    var: &'a str,
}

impl<C: Ring + fmt::Display> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = format!("{c}");
            let compound = s[1..].contains(" + ") || s[1..].contains(" - ");
            let (negative, body): (bool, String) = if compound {
                (false, format!("({s})"))
            } else if let Some(stripped) = s.strip_prefix('-') {
                (true, String::from(stripped))
            } else {
                (false, s)
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let var = self.var;
            match (k, body.as_str()) {
                (0, b) => f.write_str(b)?,
                (1, "1") => f.write_str(var)?,
                (1, b) => write!(f, "{b}*{var}")?,
                (_, "1") => write!(f, "{var}^{k}")?,
                (_, b) => write!(f, "{b}*{var}^{k}")?,
            }
        }
        Ok(())
    }
}

/// A reduced quotient of two polynomials in Λ; the denominator is monic.
#[derive(Clone, PartialEq, Debug)]
pub struct LambdaRatio {
    num: LamExpr,
    den: LamExpr,
}

impl LambdaRatio {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: LamExpr, den: LamExpr) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let g = if g.is_zero() { LamExpr::one() } else { g };
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = Rational::one() / lead;
        LambdaRatio {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &LamExpr {
        &self.num
    }

    pub fn denominator(&self) -> &LamExpr {
        &self.den
    }

    /// The value when the ratio does not depend on Λ.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// Value at a rational Λ; `None` at a pole.
    pub fn eval(&self, lambda: &Rational) -> Option<Rational> {
        let d = self.den.eval(lambda);
        if Ring::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(lambda) / d)
        }
    }
}

impl fmt::Display for LambdaRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LamExpr::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.clone() * b.clone(), p(&[-1, 0, 1]));
        assert_eq!(a.clone() - a.clone(), Poly::zero());
        assert_eq!((a.clone() * b).eval(&rat(3, 1)), rat(8, 1));
        assert_eq!(p(&[0, 0, 3]).derivative(), p(&[0, 6]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = (p(&[2, 2]) * p(&[3, 1])).gcd(&(p(&[1, 1]) * p(&[5, 1])));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn ratio_reduces() {
        let r = LambdaRatio::new(p(&[2, -3]) * p(&[1, 1]), p(&[2, 2]));
        assert_eq!(r.numerator(), &Poly::new(vec![rat(1, 1), rat(-3, 2)]));
        assert_eq!(r.denominator(), &LamExpr::one());
        assert_eq!(LambdaRatio::new(p(&[-1]), p(&[2])).as_constant(), Some(rat(-1, 2)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-12, 0, 0, 8]).display("y").to_string(), "8*y^3 - 12");
        assert_eq!(p(&[2, -3]).to_string(), "-3*L + 2");
        let g: Poly<LamExpr> = Poly::new(vec![LamExpr::from_i64(-2), LamExpr::zero(), p(&[4, -4])]);
        assert_eq!(g.display("y").to_string(), "(-4*L + 4)*y^2 - 2");
        assert_eq!(Poly::<Rational>::var().display("y").to_string(), "y");
    }

    #[test]
    fn small_sign_of_lambda_polys() {
        assert_eq!(p(&[0, -1, 5]).small_sign(), -1);
        assert_eq!(p(&[2, -100]).small_sign(), 1);
    }

    #[test]
    fn float_integer_detection() {
        assert_eq!(3.0000000000004_f64.as_integer(), Some(3));
        assert_eq!(2.5_f64.as_integer(), None);
        assert_eq!(rat(6, 3).as_integer(), Some(2));
        assert_eq!(rat(1, 3).as_integer(), None);
    }
}
