use std::collections::BTreeMap;

use super::{Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::scalar::{render_sum, ExactRender, Ring};

/// Element of the exterior algebra over the generating space of a
/// Clifford algebra.  The signature is carried so the two algebras can be
/// identified by [`quantize`] and [`symbol`].
#[derive(Clone, PartialEq, Debug)]
pub struct ExteriorElement<T> {
    sig: Signature,
    terms: BTreeMap<Blade, T>,
}

impl<T: Ring> ExteriorElement<T> {
    pub fn zero(sig: Signature) -> Self {
        ExteriorElement { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: Signature) -> Self {
        ExteriorElement::blade(sig, 0, T::one())
    }

    pub fn blade(sig: Signature, blade: Blade, c: T) -> Self {
        let mut out = ExteriorElement::zero(sig);
        out.add_term(blade, c);
        out
    }

    pub fn e(sig: Signature, i: usize) -> Self {
        ExteriorElement::blade(sig, 1 << sig.bit(i), T::one())
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, blade: Blade) -> T {
        self.terms.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, blade: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(blade) + c;
        if sum.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = ExteriorElement::zero(self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                out.add_term(a | b, if reorder_sign(*a, *b) > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// Contraction with the dual of generator bit `b`: removes `e_b` with
    /// the sign of moving it to the front.
    pub fn interior(&self, b: usize) -> Self {
        let mut out = ExteriorElement::zero(self.sig);
        for (blade, c) in &self.terms {
            if blade >> b & 1 == 0 {
                continue;
            }
            let before = (blade & ((1 << b) - 1)).count_ones();
            out.add_term(blade & !(1 << b), if before % 2 == 0 { c.clone() } else { -c.clone() });
        }
        out
    }

    /// Clifford action of a generator on forms: `e_b ^ w + e_b^2 * i(e_b) w`.
    fn clifford_action(&self, b: usize) -> Self {
        let gen = ExteriorElement::blade(self.sig, 1 << b, T::one());
        let wedge = gen.wedge(self).expect("same signature");
        let mut contraction = self.interior(b);
        if self.sig.square_bit(b) < 0 {
            contraction = contraction.map(|c| -c.clone());
        }
        wedge.try_add(&contraction).expect("same signature")
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        let mut out = ExteriorElement::zero(self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(format!("{:?}", self.sig), format!("{:?}", other.sig)));
        }
        Ok(())
    }
}

impl<T: Ring + ExactRender> ExteriorElement<T> {
    pub fn render(&self) -> String {
        render_sum(
            self.terms.iter().map(|(b, c)| (c.render(), (*b != 0).then(|| self.sig.blade_name(*b)))),
            "*",
        )
    }
}

/// Sign of sorting the concatenation of two disjoint blades.
fn reorder_sign(a: Blade, b: Blade) -> i8 {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Quantization: `e_{i1}^...^e_{ik} -> e_{i1}...e_{ik}`.
pub fn quantize<T: Ring>(w: &ExteriorElement<T>) -> Multivector<T> {
    Multivector::from_terms(w.sig, w.terms.iter().map(|(b, c)| (*b, c.clone())))
}

/// Symbol map `a -> c(a) 1`, where each generator acts on forms by
/// wedge plus (signed) contraction.
pub fn symbol<T: Ring>(a: &Multivector<T>) -> ExteriorElement<T> {
    let sig = a.signature();
    let mut out = ExteriorElement::zero(sig);
    for (blade, c) in a.terms() {
        // e_{i1} ... e_{ik} acting on 1: apply the rightmost generator first.
        let mut form = ExteriorElement::blade(sig, 0, c.clone());
        for b in (0..sig.dim()).rev().filter(|b| blade >> b & 1 == 1) {
            form = form.clifford_action(b);
        }
        out = out.try_add(&form).expect("same signature");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    #[test]
    fn quantize_and_symbol_examples() {
        let sig = Signature::euclidean(3);
        let e1 = ExteriorElement::<Rational>::e(sig, 1);
        let e2 = ExteriorElement::e(sig, 2);
        let w = e1.wedge(&e2).unwrap();
        let q = quantize(&w);
        assert_eq!(q, &Multivector::e(sig, 1) * &Multivector::e(sig, 2));
        assert_eq!(symbol(&q), w);
        assert_eq!(symbol(&Multivector::<Rational>::one(sig)), ExteriorElement::one(sig));
    }

    #[test]
    fn symbol_of_a_square_is_its_scalar() {
        let sig = Signature::euclidean(2);
        let e1 = Multivector::<Rational>::e(sig, 1);
        let sq = &e1 * &e1;
        assert_eq!(symbol(&sq), ExteriorElement::blade(sig, 0, rational(-1, 1)));
    }

    #[test]
    fn wedge_is_alternating() {
        let sig = Signature::euclidean(2);
        let e1 = ExteriorElement::<Rational>::e(sig, 1);
        let e2 = ExteriorElement::e(sig, 2);
        assert!(e1.wedge(&e1).unwrap().terms().next().is_none());
        assert_eq!(e2.wedge(&e1).unwrap(), e1.wedge(&e2).unwrap().map(|c| -c.clone()));
    }
}
