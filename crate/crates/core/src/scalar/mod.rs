//! Exact scalar tower: rationals, Gaussian rationals, jets, multivariate
//! polynomials and rational functions.
//!
//! Everything above this module is written against the [`Ring`] and
//! [`Field`] traits so the same code runs over `Rational`, `Jet<Rational>`,
//! polynomial rings, or `f64` when a floating cross-check is wanted.

mod jet;
mod poly;
mod ratfunc;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use jet::Jet;
pub use poly::{Block, Monomial, MultiPoly, PolyRing, Var, MAX_DIM, NVARS};
pub use ratfunc::{frac_is_zero, RationalFunction};
pub use rational::{gaussian, parse_rational, rational, GaussianRational, Rational};

/// Commutative ring with identity (matrices aside, every scalar used here).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + ExactRender
    + Send
    + Sync
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + ExactRender
        + Send
        + Sync
        + 'static
{
}

/// The image of an integer in any ring, by binary doubling.
pub fn int<T: Ring>(n: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// A ring in which nonzero elements (or at least the units the caller
/// needs) can be inverted.
pub trait Field: Ring + Div<Output = Self> {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.try_inv()?)
    }
}

/// Rings that contain the rationals.
pub trait FromRational: Ring {
    fn from_rational(q: &Rational) -> Self;
}

/// Rings that contain a square root of -1.
pub trait ImaginaryUnit: Ring {
    fn imag_unit() -> Self;
}

/// Exact square roots where they exist in the field.
pub trait ExactSqrt: Sized {
    fn try_sqrt(&self) -> Option<Self>;
}

/// Sign information for ordered scalars.
pub trait Positivity {
    fn is_positive(&self) -> bool;
}

/// Canonical text rendering used in JSON output and diagnostics.
pub trait ExactRender {
    fn render(&self) -> String;
}

/// Joins `(coefficient, basis)` pairs into `"3/2*e1 - x1 + (1+2*i)*x2"`
/// form.  A missing basis is the unit; a unit coefficient is omitted.
pub fn render_sum(terms: impl IntoIterator<Item = (String, Option<String>)>, mul: &str) -> String {
    let needs_parens = |c: &str| c.char_indices().any(|(i, ch)| i > 0 && (ch == '+' || ch == '-'));
    let mut out = String::new();
    for (k, (mut coeff, basis)) in terms.into_iter().enumerate() {
        let negative = coeff.starts_with('-') && !needs_parens(&coeff[1..]);
        if negative {
            coeff.remove(0);
        }
        if needs_parens(&coeff) {
            coeff = format!("({coeff})");
        }
        let body = match basis {
            None => coeff,
            Some(b) if coeff == "1" => b,
            Some(b) => format!("{coeff}{mul}{b}"),
        };
        let sep = match (k, negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sep);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Field for f64 {
    fn try_inv(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
}

impl FromRational for f64 {
    fn from_rational(q: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
}

impl ExactSqrt for f64 {
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Positivity for f64 {
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

impl ExactRender for f64 {
    fn render(&self) -> String {
        format!("{self}")
    }
}

impl ExactRender for f32 {
    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Field for f32 {
    fn try_inv(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
}

impl FromRational for f32 {
    fn from_rational(q: &Rational) -> Self {
        num_traits::ToPrimitive::to_f32(q).unwrap_or(f32::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_embeds_integers() {
        assert_eq!(int::<Rational>(-7), rational(-7, 1));
        assert_eq!(int::<f64>(12), 12.0);
        assert_eq!(int::<Rational>(0), Rational::zero());
    }
}
