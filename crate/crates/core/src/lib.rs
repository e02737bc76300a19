//! Exact symbolic engine for conformally covariant bi-differential
//! operators on spinor fields.
//!
//! Layers, bottom up: exact scalars ([`scalar`]), dense matrices, Clifford
//! algebras, Clifford modules, the conformal spin group `Spin(1, n+1)`,
//! differential operators with matrix-polynomial coefficients and their
//! symbols, and finally the source operator and the symmetry breaking
//! operator family built from it.

pub mod clifford;
pub mod conformal;
pub mod error;
pub mod matrix;
pub mod sbdo;
pub mod scalar;
pub mod spin;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{
    frac_is_zero, gaussian, parse_rational, rational, GaussianRational, Jet, Monomial, MultiPoly, PolyRing,
    Rational, RationalFunction, Var,
};

/// Polynomials with Gaussian-rational coefficients: the working coefficient
/// ring of every operator in the engine.
pub type Poly = MultiPoly<GaussianRational>;
/// Rational functions over the Gaussian rationals.
pub type RatFn = RationalFunction<GaussianRational>;
/// Matrices of polynomials.
pub type PolyMatrix = Matrix<Poly>;
