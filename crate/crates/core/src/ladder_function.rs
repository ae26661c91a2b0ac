//! Functions of the form `z^s·Q(y)` with `z = 1 + Λy²` and `Q` a polynomial.
//!
//! The family is closed under `d/dy`,
//! `d/dy[z^s Q] = z^{s−1}·(2Λs·yQ + zQ′)`, under multiplication by
//! polynomials and by integer and half-integer powers of `z`, which is all
//! the ladder operators need. With rational coefficients every identity on
//! this family is an exact coefficient comparison.

use crate::poly::{Field, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LadderFunction<F> {
    lambda: F,
    exponent: F,
    poly: Poly<F>,
}

impl<F: Field> LadderFunction<F> {
    pub fn new(lambda: F, exponent: F, poly: Poly<F>) -> Self {
        LadderFunction {
            lambda,
            exponent,
            poly,
        }
    }

    /// `z^s` alone.
    pub fn power(lambda: F, exponent: F) -> Self {
        Self::new(lambda, exponent, Poly::constant(F::one()))
    }

    pub fn zero(lambda: F) -> Self {
        Self::new(lambda, F::zero(), Poly::zero())
    }

    pub fn lambda(&self) -> &F {
        &self.lambda
    }

    pub fn exponent(&self) -> &F {
        &self.exponent
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `1 + Λy²` as a polynomial in `y`.
    pub fn z(&self) -> Poly<F> {
        z_poly(&self.lambda)
    }

    pub fn derivative(&self) -> Self {
        let s = self.exponent.clone();
        let two_lambda_s = F::from_i64(2) * self.lambda.clone() * s.clone();
        let poly = self.poly.shift(1).scale(&two_lambda_s) + self.z() * self.poly.derivative();
        Self::new(self.lambda.clone(), s - F::one(), poly)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.lambda.clone(), self.exponent.clone(), self.poly.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly<F>) -> Self {
        Self::new(
            self.lambda.clone(),
            self.exponent.clone(),
            self.poly.clone() * q.clone(),
        )
    }

    /// Multiplies the function by `z^k`.
    pub fn mul_z_power(&self, k: F) -> Self {
        Self::new(
            self.lambda.clone(),
            self.exponent.clone() + k,
            self.poly.clone(),
        )
    }

    /// The same function written with exponent `s − k`.
    pub fn lower_exponent(&self, k: u32) -> Self {
        let zk = self.z().pow(k);
        Self::new(
            self.lambda.clone(),
            self.exponent.clone() - F::from_i64(i64::from(k)),
            self.poly.clone() * zk,
        )
    }

    /// Brings both functions to the smaller common exponent.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.is_zero() {
            return Ok((Self::new(self.lambda.clone(), other.exponent.clone(), Poly::zero()), other.clone()));
        }
        if other.is_zero() {
            return Ok((self.clone(), Self::new(self.lambda.clone(), self.exponent.clone(), Poly::zero())));
        }
        let diff = (self.exponent.clone() - other.exponent.clone())
            .as_integer()
            .ok_or(Error::ExponentMismatch)?;
        let k = u32::try_from(diff.unsigned_abs()).map_err(|_| Error::ExponentMismatch)?;
        if diff >= 0 {
            let mut a = self.lower_exponent(k);
            a.exponent = other.exponent.clone();
            Ok((a, other.clone()))
        } else {
            let mut b = other.lower_exponent(k);
            b.exponent = self.exponent.clone();
            Ok((self.clone(), b))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(Self::new(a.lambda, a.exponent, a.poly + b.poly))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-F::one()))
    }

    /// Removes every factor of `z` from the polynomial part.
    pub fn reduced(&self) -> Self {
        let z = self.z();
        let mut out = self.clone();
        if z.degree() == Some(0) {
            return out;
        }
        while !out.poly.is_zero() {
            let (q, r) = out.poly.div_rem(&z);
            if !r.is_zero() {
                break;
            }
            out.poly = q;
            out.exponent = out.exponent + F::one();
        }
        out
    }

    /// Equality as functions (exact for rational coefficients).
    pub fn same_function(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    pub fn evaluate(&self, y: f64) -> f64 {
        let z = 1.0 + self.lambda.to_f64() * y * y;
        libm::pow(z, self.exponent.to_f64()) * self.poly.eval_f64(y)
    }
}

/// `1 + Λy²`.
pub fn z_poly<F: Field>(lambda: &F) -> Poly<F> {
    Poly::new(alloc::vec![F::one(), F::zero(), lambda.clone()])
}
