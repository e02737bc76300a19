use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, ExactRender, ExactSqrt, Field, FromRational, Positivity, Rational, Ring};
use crate::error::Result;

/// First-order jet `value + t*slope` with `t^2 = 0`.
///
/// Running a group-level computation over jets and reading off the slope
/// gives its derivative at `t = 0` exactly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Jet<T> {
    pub value: T,
    pub slope: T,
}

impl<T: Ring> Jet<T> {
    pub fn new(value: T, slope: T) -> Self {
        Jet { value, slope }
    }

    pub fn constant(value: T) -> Self {
        Jet { value, slope: T::zero() }
    }

    /// The infinitesimal `t` itself.
    pub fn epsilon() -> Self {
        Jet { value: T::zero(), slope: T::one() }
    }
}

impl<T: fmt::Debug> fmt::Debug for Jet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + t*{:?})", self.value, self.slope)
    }
}

impl<T: Ring> Add for Jet<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Jet::new(self.value + rhs.value, self.slope + rhs.slope)
    }
}

impl<T: Ring> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Jet::new(self.value - rhs.value, self.slope - rhs.slope)
    }
}

impl<T: Ring> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let slope = self.value.clone() * rhs.slope + self.slope * rhs.value.clone();
        Jet::new(self.value * rhs.value, slope)
    }
}

impl<T: Ring> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet::new(-self.value, -self.slope)
    }
}

impl<T: Ring> Zero for Jet<T> {
    fn zero() -> Self {
        Jet::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.slope.is_zero()
    }
}

impl<T: Ring> One for Jet<T> {
    fn one() -> Self {
        Jet::new(T::one(), T::zero())
    }
}

impl<T: Field> Div for Jet<T> {
    type Output = Self;
    /// Panics when the value part of `rhs` is not invertible; use
    /// [`Field::try_div`] for a checked version.
    fn div(self, rhs: Self) -> Self {
        self.try_div(&rhs).expect("jet division by a non-unit")
    }
}

impl<T: Field> Field for Jet<T> {
    fn try_inv(&self) -> Result<Self> {
        let inv = self.value.try_inv()?;
        let slope = -(self.slope.clone() * inv.clone() * inv.clone());
        Ok(Jet::new(inv, slope))
    }
}

impl<T: FromRational> FromRational for Jet<T> {
    fn from_rational(q: &Rational) -> Self {
        Jet::constant(T::from_rational(q))
    }
}

/// `sqrt(a + t b) = sqrt(a) + t b / (2 sqrt(a))`, defined when `sqrt(a)`
/// exists and is nonzero.
impl<T: Field + ExactSqrt> ExactSqrt for Jet<T> {
    fn try_sqrt(&self) -> Option<Self> {
        let root = self.value.try_sqrt()?;
        let denom = (int::<T>(2) * root.clone()).try_inv().ok()?;
        Some(Jet::new(root, self.slope.clone() * denom))
    }
}

impl<T: Ring> ExactRender for Jet<T> {
    fn render(&self) -> String {
        format!("({} + t*{})", self.value.render(), self.slope.render())
    }
}

impl<T: Positivity> Positivity for Jet<T> {
    fn is_positive(&self) -> bool {
        self.value.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn j(a: i64, b: i64) -> Jet<Rational> {
        Jet::new(rational(a, 1), rational(b, 1))
    }

    #[test]
    fn product_drops_second_order() {
        assert_eq!(j(1, 3) * j(2, 5), j(2, 11));
        assert_eq!(Jet::<Rational>::epsilon() * Jet::epsilon(), Jet::zero());
    }

    #[test]
    fn inverse_and_sqrt() {
        let a = j(4, 1);
        assert_eq!(a.clone() * a.try_inv().unwrap(), Jet::one());
        let r = a.try_sqrt().unwrap();
        assert_eq!(r.clone() * r, a);
        assert!(j(0, 1).try_inv().is_err());
    }
}
