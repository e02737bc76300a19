//! The spin group of the Lorentzian algebra `Cl(1, n+1)` acting on `R^n`
//! by conformal maps: standard elements, Gelfand-Naimark factorization and
//! the infinitesimal principal-series action.

mod gn;
mod lie;
pub mod sample;
mod text;

pub use gn::{conformal_action, gn_factorize, scale_and_translation, GnFactors};
pub use lie::{bivector_basis, decompose_bivector, infinitesimal_action, infinitesimal_action_tensor, BivectorDecomp};
pub use text::{parse_group_element, parse_multivector};

use crate::clifford::{AdjointMode, Multivector, Signature, Versor};
use crate::error::{Error, Result};
use crate::scalar::{int, Field, FromRational, Positivity, Ring};

/// Scalars the group can be built over.
pub trait GroupScalar: Field + FromRational + Positivity {}

impl<T: Field + FromRational + Positivity> GroupScalar for T {}

fn half<T: FromRational>() -> T {
    T::from_rational(&crate::rational(1, 2))
}

/// An even element `g` of `Cl(1, n+1)` with `g alpha(g) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    n: usize,
    g: Multivector<T>,
}

impl<T: Ring> GroupElement<T> {
    pub fn new(g: Multivector<T>) -> Result<Self> {
        let sig = g.signature();
        let n = sig
            .dim()
            .checked_sub(2)
            .filter(|n| sig == Signature::lorentzian(*n))
            .ok_or_else(|| Error::SignatureMismatch(format!("{sig:?}"), "lorentzian".into()))?;
        if !g.is_even() {
            return Err(Error::NotAVersor("group elements are even".into()));
        }
        if g.try_mul(&g.alpha())? != Multivector::one(sig) {
            return Err(Error::NotAVersor("g alpha(g) != 1".into()));
        }
        Ok(GroupElement { n, g })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { n, g: Multivector::one(Signature::lorentzian(n)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn element(&self) -> &Multivector<T> {
        &self.g
    }

    pub fn mul(&self, other: &Self) -> Self {
        GroupElement { n: self.n, g: &self.g * &other.g }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { n: self.n, g: self.g.alpha() }
    }

    /// `x -> g x alpha(g)` on `R^(1, n+1)`.
    pub fn act_on_vector(&self, x: &Multivector<T>) -> Result<Multivector<T>> {
        if !x.is_grade(1) {
            return Err(Error::Invariant("the conformal action is on vectors".into()));
        }
        // g alpha(g) = 1 holds by construction, so only the vector part of
        // g x alpha(g) is needed.
        self.g.try_mul(x)?.product_grade(&self.g.alpha(), 1)
    }

    pub fn render(&self) -> String
    where
        T: crate::scalar::ExactRender,
    {
        self.g.render()
    }

    /// Matrix of [`GroupElement::act_on_vector`]; it preserves the quadratic form.
    pub fn vector_matrix(&self) -> Result<crate::Matrix<T>> {
        Versor::new(self.g.clone())?.adjoint_matrix(AdjointMode::LorentzAlpha)
    }
}

impl<T: GroupScalar> GroupElement<T> {
    /// `nbar_z = 1 + z (e0 + e_{n+1}) / 2`.
    pub fn nbar(z: &[T]) -> Self {
        let n = z.len();
        GroupElement { n, g: &Multivector::one(Signature::lorentzian(n)) + &null_part(z, 1) }
    }

    /// `n_y = 1 + y (e0 - e_{n+1}) / 2`.
    pub fn n_elem(y: &[T]) -> Self {
        let n = y.len();
        GroupElement { n, g: &Multivector::one(Signature::lorentzian(n)) + &null_part(y, -1) }
    }

    /// `a(r) = (r + 1/r)/2 + ((r - 1/r)/2) e0 e_{n+1}`, acting by `x -> x / r^2`.
    pub fn a(n: usize, r: &T) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidValue("a(r) needs r > 0".into()));
        }
        let inv = r.try_inv()?;
        let sig = Signature::lorentzian(n);
        let c = (r.clone() + inv.clone()) * half();
        let s = (r.clone() - inv) * half();
        Ok(GroupElement { n, g: &Multivector::scalar(sig, c) + &h_element(n).scale(&s) })
    }

    /// `w = e1 e_{n+1}`.
    pub fn w(n: usize) -> Self {
        GroupElement { n, g: Multivector::product_of(Signature::lorentzian(n), &[1, n + 1]) }
    }

    /// A Euclidean `Spin(n)` element moved into `Cl(1, n+1)`.
    pub fn m(m: &Multivector<T>) -> Result<Self> {
        let n = m.signature().dim();
        let g = m.euclidean_to_lorentzian()?;
        let out = GroupElement::new(g)?;
        debug_assert_eq!(out.n, n);
        Ok(out)
    }
}

/// `H = e0 e_{n+1}`.
pub fn h_element<T: Ring>(n: usize) -> Multivector<T> {
    Multivector::product_of(Signature::lorentzian(n), &[0, n + 1])
}

/// `z (e0 + sign e_{n+1}) / 2` for a vector `z` of `R^n`.
pub(crate) fn null_part<T: Ring + FromRational>(z: &[T], sign: i64) -> Multivector<T> {
    let n = z.len();
    let sig = Signature::lorentzian(n);
    let mut acc = Multivector::zero(sig);
    for (j, c) in z.iter().enumerate() {
        let c = c.clone() * half();
        let a = Multivector::product_of(sig, &[j + 1, 0]).scale(&c);
        let b = Multivector::product_of(sig, &[j + 1, n + 1]).scale(&(c * int(sign)));
        acc = &(&acc + &a) + &b;
    }
    acc
}

/// `e1 x e1` for `x` in `R^n` (with `e1^2 = -1`): the reflection `x1 -> -x1`.
pub fn reflect_e1<T: Ring>(x: &[T]) -> Vec<T> {
    x.iter().enumerate().map(|(j, c)| if j == 0 { -c.clone() } else { c.clone() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn q(a: i64, b: i64) -> Rational {
        rational(a, b)
    }

    #[test]
    fn one_parameter_subgroups() {
        let z = [q(1, 2), q(-3, 4)];
        let mz: Vec<_> = z.iter().map(|c| -c.clone()).collect();
        let g = GroupElement::nbar(&z).mul(&GroupElement::nbar(&mz));
        assert_eq!(g, GroupElement::identity(2));
        let ab = GroupElement::a(2, &q(2, 1)).unwrap().mul(&GroupElement::a(2, &q(3, 5)).unwrap());
        assert_eq!(ab, GroupElement::a(2, &q(6, 5)).unwrap());
        assert!(GroupElement::a(2, &q(-1, 1)).is_err());
        for n in 1..=3 {
            assert!(GroupElement::new(GroupElement::<Rational>::w(n).element().clone()).is_ok());
            assert!(GroupElement::new(GroupElement::nbar(&vec![q(2, 3); n]).element().clone()).is_ok());
            assert!(GroupElement::new(GroupElement::n_elem(&vec![q(-1, 3); n]).element().clone()).is_ok());
        }
    }

    #[test]
    fn reflection_matches_the_clifford_product() {
        let sig = Signature::euclidean(3);
        let x = [q(1, 2), q(-2, 3), q(5, 1)];
        let e1 = Multivector::<Rational>::e(sig, 1);
        let got = (&(&e1 * &Multivector::vector(sig, &x)) * &e1).vector_part();
        assert_eq!(got, reflect_e1(&x));
    }

    #[test]
    fn w_conjugates_h_to_minus_h() {
        for n in 1..=4 {
            let w = GroupElement::<Rational>::w(n);
            let h = h_element::<Rational>(n);
            let got = &(w.element() * &h) * w.inverse().element();
            assert_eq!(got, -&h);
        }
    }

    #[test]
    fn vector_action_preserves_the_form() {
        let g = GroupElement::nbar(&[q(1, 3), q(2, 1)]).mul(&GroupElement::a(2, &q(3, 2)).unwrap());
        let m = g.vector_matrix().unwrap();
        let eta = crate::Matrix::from_fn(4, 4, |i, j| {
            if i != j {
                q(0, 1)
            } else if i == 0 {
                q(1, 1)
            } else {
                q(-1, 1)
            }
        });
        assert_eq!(&(&m.transpose() * &eta) * &m, eta);
    }
}
