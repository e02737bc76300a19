use super::{half, GroupElement, GroupScalar};
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::scalar::{int, ExactRender, ExactSqrt, Ring};

/// `g = nbar_v m a(r) n_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct GnFactors<T> {
    pub v: Vec<T>,
    /// Euclidean `Spin(n)` element.
    pub m: Multivector<T>,
    pub r: T,
    pub u: Vec<T>,
}

impl<T: GroupScalar> GnFactors<T> {
    pub fn recompose(&self) -> Result<GroupElement<T>> {
        let n = self.v.len();
        Ok(GroupElement::nbar(&self.v)
            .mul(&GroupElement::m(&self.m)?)
            .mul(&GroupElement::a(n, &self.r)?)
            .mul(&GroupElement::n_elem(&self.u)))
    }
}

impl<T: Ring + ExactRender> GnFactors<T> {
    /// Text in the group-element token format.
    pub fn render(&self) -> String {
        let list = |v: &[T]| v.iter().map(|c| c.render()).collect::<Vec<_>>().join(",");
        format!("nbar({}) m:({}) a({}) n({})", list(&self.v), self.m.render(), self.r.render(), list(&self.u))
    }
}

/// `r^2` and `v` for `g = nbar_v m a(r) n_u`, read off from the image of
/// the null vector `e0 - e_{n+1}`, which is `r^2 (q + 2v + |v|^2 p)`.
/// `None` when `g` is outside the dense cell.
pub fn scale_and_translation<T: GroupScalar>(g: &GroupElement<T>) -> Result<Option<(T, Vec<T>)>> {
    let n = g.n();
    let sig = Signature::lorentzian(n);
    let q = &Multivector::e(sig, 0) - &Multivector::e(sig, n + 1);
    let w = g.act_on_vector(&q)?.vector_part();
    let r2 = (w[0].clone() - w[n + 1].clone()) * half();
    if r2.is_zero() {
        return Ok(None);
    }
    let scale = (int::<T>(2) * r2.clone()).try_inv()?;
    let v = (1..=n).map(|j| w[j].clone() * scale.clone()).collect();
    Ok(Some((r2, v)))
}

/// Gelfand-Naimark factorization `g = nbar_v m a(r) n_u`, exact.
pub fn gn_factorize<T: GroupScalar + ExactSqrt + ExactRender>(g: &GroupElement<T>) -> Result<GnFactors<T>> {
    let n = g.n();
    let (r2, v) = scale_and_translation(g)?.ok_or(Error::NotInDenseCell)?;
    if !r2.is_positive() {
        return Err(Error::NotInDenseCell);
    }
    let r = r2
        .try_sqrt()
        .ok_or_else(|| Error::FieldExtensionRequired(format!("sqrt({})", r2.render())))?;
    let minus_v: Vec<T> = v.iter().map(|c| -c.clone()).collect();
    // h1 = m a(r) n_u; its Euclidean part is ((r + 1/r)/2) m.
    let h1 = GroupElement::nbar(&minus_v).mul(g);
    let c = (r.clone() + r.try_inv()?) * half();
    let euclid = Multivector::from_terms(
        h1.element().signature(),
        h1.element().terms().filter(|(b, _)| b & (1 | 1 << (n + 1)) == 0).map(|(b, x)| (b, x.clone())),
    );
    let m = euclid.scale(&c.try_inv()?).lorentzian_to_euclidean()?;
    let m_elem = GroupElement::m(&m).map_err(|_| Error::Invariant("rotation factor is not in Spin(n)".into()))?;
    let h2 = GroupElement::a(n, &r.try_inv()?)?.mul(&m_elem.inverse()).mul(&h1);
    let sig = h2.element().signature();
    let u: Vec<T> = (1..=n)
        .map(|j| -(int::<T>(2) * h2.element().coeff(sig.blade(&[j, n + 1]))))
        .collect();
    if h2 != GroupElement::n_elem(&u) {
        return Err(Error::Invariant("residual factor is not in N".into()));
    }
    let out = GnFactors { v, m, r, u };
    if out.recompose()? != *g {
        return Err(Error::Invariant("factorization does not recompose".into()));
    }
    Ok(out)
}

/// The conformal map of `g` at `x`: the `nbar` part of `g nbar_x`.
pub fn conformal_action<T: GroupScalar + ExactRender>(g: &GroupElement<T>, x: &[T]) -> Result<Vec<T>> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch(format!("point of length {} for n = {}", x.len(), g.n())));
    }
    let h = g.mul(&GroupElement::nbar(x));
    match scale_and_translation(&h)? {
        Some((_, v)) => Ok(v),
        None => Err(Error::ActionUndefined(format!(
            "({}) is sent to infinity",
            x.iter().map(|c| c.render()).collect::<Vec<_>>().join(",")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::reflect_e1;
    use super::*;
    use crate::scalar::{rational, Rational};

    fn q(a: i64, b: i64) -> Rational {
        rational(a, b)
    }

    #[test]
    fn w_inverse_nbar_factorizes_as_expected() {
        let x = [q(3, 5), q(4, 5)];
        let g = GroupElement::w(2).inverse().mul(&GroupElement::nbar(&x));
        let f = gn_factorize(&g).unwrap();
        assert_eq!(f.r, q(1, 1));
        assert_eq!(f.v, reflect_e1(&x));
        assert_eq!(f.u, x.to_vec());
        let sig = Signature::euclidean(2);
        let xv = Multivector::vector(sig, &x);
        assert_eq!(f.m, -&(&Multivector::e(sig, 1) * &xv));
    }

    #[test]
    fn w_is_outside_the_cell() {
        for n in 1..=3 {
            assert_eq!(gn_factorize(&GroupElement::<Rational>::w(n)), Err(Error::NotInDenseCell));
        }
    }

    #[test]
    fn irrational_scale_needs_extension() {
        let g = GroupElement::w(1).inverse().mul(&GroupElement::nbar(&[q(2, 1)]));
        assert!(gn_factorize(&g).is_ok());
        let g = GroupElement::w(2).inverse().mul(&GroupElement::nbar(&[q(1, 1), q(1, 1)]));
        assert!(matches!(gn_factorize(&g), Err(Error::FieldExtensionRequired(_))));
    }

    #[test]
    fn standard_actions() {
        let x = [q(1, 2), q(-1, 3)];
        let v = [q(2, 1), q(5, 7)];
        assert_eq!(conformal_action(&GroupElement::nbar(&v), &x).unwrap(), vec![q(5, 2), q(8, 21)]);
        let a = GroupElement::a(2, &q(2, 1)).unwrap();
        assert_eq!(conformal_action(&a, &x).unwrap(), vec![q(1, 8), q(-1, 12)]);
        let sig = Signature::euclidean(2);
        let m = Multivector::product_of(sig, &[1, 2]);
        let g = GroupElement::m(&m).unwrap();
        let xv = Multivector::vector(sig, &x);
        let expect = (&(&m * &xv) * &m.alpha()).vector_part();
        assert_eq!(conformal_action(&g, &x).unwrap(), expect);
        let w = GroupElement::<Rational>::w(2);
        assert!(matches!(conformal_action(&w, &[q(0, 1), q(0, 1)]), Err(Error::ActionUndefined(_))));
    }
}
