use super::Multivector;
use crate::error::{Error, Result};
use crate::scalar::Ring;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// How a versor acts on vectors.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AdjointMode {
    /// `x -> g x g^-1`.
    PinConj,
    /// `x -> g x alpha(g)`.
    LorentzAlpha,
}

/// A homogeneous element `g` with `g alpha(g) = +-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Versor<T> {
    element: Multivector<T>,
    parity: Parity,
    norm_sign: i8,
}

impl<T: Ring> Versor<T> {
    pub fn new(element: Multivector<T>) -> Result<Self> {
        let parity = if element.is_even() && !element.is_zero() {
            Parity::Even
        } else if element.is_odd() && !element.is_zero() {
            Parity::Odd
        } else {
            return Err(Error::NotAVersor("element is not homogeneous".into()));
        };
        let norm = element.try_mul(&element.alpha())?;
        let norm_sign = if norm == Multivector::one(element.signature()) {
            1
        } else if norm == Multivector::scalar(element.signature(), -T::one()) {
            -1
        } else {
            return Err(Error::NotAVersor("g alpha(g) is not +1 or -1".into()));
        };
        Ok(Versor { element, parity, norm_sign })
    }

    pub fn element(&self) -> &Multivector<T> {
        &self.element
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The scalar `g alpha(g)`, either `1` or `-1`.
    pub fn norm_sign(&self) -> i8 {
        self.norm_sign
    }

    /// `g^-1 = alpha(g) / (g alpha(g))`.
    pub fn inverse(&self) -> Multivector<T> {
        let a = self.element.alpha();
        if self.norm_sign > 0 {
            a
        } else {
            -&a
        }
    }

    pub fn adjoint(&self, x: &Multivector<T>, mode: AdjointMode) -> Result<Multivector<T>> {
        if !x.is_grade(1) {
            return Err(Error::WrongGrade { expected: 1, found: max_grade(x) });
        }
        let right = match mode {
            AdjointMode::PinConj => self.inverse(),
            AdjointMode::LorentzAlpha => self.element.alpha(),
        };
        let y = self.element.try_mul(x)?.try_mul(&right)?;
        if !y.is_grade(1) {
            return Err(Error::Invariant("versor adjoint left the vector space".into()));
        }
        Ok(y)
    }

    /// Matrix of the adjoint action in the generator basis: column `j` is
    /// the image of generator bit `j`.
    pub fn adjoint_matrix(&self, mode: AdjointMode) -> Result<crate::Matrix<T>> {
        let sig = self.element.signature();
        let images = (0..sig.dim())
            .map(|b| self.adjoint(&Multivector::blade(sig, 1 << b, T::one()), mode).map(|y| y.vector_part()))
            .collect::<Result<Vec<_>>>()?;
        Ok(crate::Matrix::from_fn(sig.dim(), sig.dim(), |i, j| images[j][i].clone()))
    }
}

fn max_grade<T: Ring>(x: &Multivector<T>) -> usize {
    x.terms().map(|(b, _)| b.count_ones() as usize).max().unwrap_or(0)
}

/// Versor adjoint on a possibly-unchecked element; fails unless
/// `g alpha(g) = +-1`.
pub fn versor_adjoint<T: Ring>(g: &Multivector<T>, x: &Multivector<T>, mode: AdjointMode) -> Result<Multivector<T>> {
    Versor::new(g.clone())?.adjoint(x, mode)
}

impl<T: Ring> Versor<T> {
    pub fn identity(sig: super::Signature) -> Self {
        Versor { element: Multivector::one(sig), parity: Parity::Even, norm_sign: 1 }
    }
}
