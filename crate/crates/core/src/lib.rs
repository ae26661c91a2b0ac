//! Exactly solvable structures of the λ-deformed quantum nonlinear oscillator.
//!
//! The crate is `no_std` (with `alloc`). Exact work runs on arbitrary-precision
//! rationals and on polynomials in the deformation parameter; numerical work
//! (quadrature, the finite-difference eigensolver, classical orbits) runs on
//! `f64` through `libm`.
//!
//! Module map:
//!
//! - [`params`]: physical and adimensional parameters, sign classification.
//! - [`poly`]: coefficient rings and dense polynomials.
//! - [`hermite`]: deformed Hermite polynomials by three independent routes.
//! - [`ladder_function`]: the closed family `z^s Q(y)` with `z = 1 + Λy²`.
//! - [`spectrum`]: closed-form energies and bound-state counting.
//! - [`wavefunction`]: eigenfunction evaluation, nodes, overlaps.
//! - [`quadrature`]: integration against the invariant measure.
//! - [`tridiagonal`] and [`sturm_liouville`]: the independent numerical route.
//! - [`factorization`]: ladder operators, partner potentials, shape invariance.
//! - [`classical`]: the classical quasi-harmonic oscillator.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classical;
mod error;
pub mod factorization;
pub mod hermite;
pub mod ladder_function;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod spectrum;
pub mod sturm_liouville;
pub mod tridiagonal;
pub mod wavefunction;

pub use error::{Error, Result};
pub use hermite::{LambdaPoly, Normalization, Parity};
pub use ladder_function::LadderFunction;
pub use params::{classify, DeformationParam, PhysicalParams, SignClass};
pub use poly::{rat, Field, LamExpr, Poly, Rational, Ring};
