//! Clifford algebras with an orthonormal basis of squares `+1` or `-1`.
//!
//! Basis blades are bitmasks over the generators; bit `b` stands for the
//! generator with display index `first_index + b`.  The Euclidean algebra
//! uses generators `e1..en` with `e_i^2 = -1`; the Lorentzian algebra of
//! the conformal group uses `e0..e_{n+1}` with `e0^2 = +1` and all other
//! squares `-1`.

mod exterior;
mod versor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{int, render_sum, ExactRender, Field, Ring};

pub use exterior::{quantize, symbol, ExteriorElement};
pub use versor::{versor_adjoint, AdjointMode, Parity, Versor};

/// A basis blade, as a bitmask of generators.
pub type Blade = u32;

/// Squares of the basis generators.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    dim: u8,
    /// Bit `b` set means generator `b` squares to `+1`.
    positive: u32,
    first_index: u8,
}

impl Signature {
    /// Generators from a list of squares, displayed from index `first_index`.
    pub fn new(diag: &[i8], first_index: u8) -> Result<Self> {
        if diag.len() > 16 {
            return Err(Error::OutOfRange(format!("{} generators", diag.len())));
        }
        let mut positive = 0;
        for (b, d) in diag.iter().enumerate() {
            match d {
                1 => positive |= 1 << b,
                -1 => {}
                _ => return Err(Error::InvalidValue(format!("generator square {d}"))),
            }
        }
        Ok(Signature { dim: diag.len() as u8, positive, first_index })
    }

    /// `e1..en`, all squaring to `-1`.
    pub fn euclidean(n: usize) -> Self {
        Signature::new(&vec![-1; n], 1).expect("valid signature")
    }

    /// `e0..e_{n+1}` with squares `(+1, -1, ..., -1)`.
    pub fn lorentzian(n: usize) -> Self {
        let mut diag = vec![-1; n + 2];
        diag[0] = 1;
        Signature::new(&diag, 0).expect("valid signature")
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn first_index(&self) -> usize {
        self.first_index as usize
    }

    /// Square of generator with display index `i`.
    pub fn square(&self, i: usize) -> i8 {
        self.square_bit(self.bit(i))
    }

    fn square_bit(&self, b: usize) -> i8 {
        if self.positive >> b & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn diag(&self) -> Vec<i8> {
        (0..self.dim()).map(|b| self.square_bit(b)).collect()
    }

    /// Bit position of display index `i`; panics when out of range.
    pub fn bit(&self, i: usize) -> usize {
        assert!(
            i >= self.first_index() && i < self.first_index() + self.dim(),
            "generator e{i} not in this algebra"
        );
        i - self.first_index()
    }

    pub fn blade(&self, indices: &[usize]) -> Blade {
        indices.iter().fold(0, |acc, i| acc | 1 << self.bit(*i))
    }

    pub fn indices(&self, blade: Blade) -> Vec<usize> {
        (0..self.dim()).filter(|b| blade >> b & 1 == 1).map(|b| b + self.first_index()).collect()
    }

    pub fn blade_name(&self, blade: Blade) -> String {
        if blade == 0 {
            return "1".into();
        }
        self.indices(blade).iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("^")
    }

    /// `e_A e_B = sign * e_{A xor B}`.
    pub fn blade_product(&self, a: Blade, b: Blade) -> (i8, Blade) {
        // Each generator of `b` passes the generators of `a` above it.
        let mut swaps = 0;
        let mut rest = b;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            swaps += (a >> (bit + 1)).count_ones();
            rest &= rest - 1;
        }
        let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
        // Contracted pairs contribute their squares.
        let common = a & b;
        if (common & !self.positive).count_ones() % 2 == 1 {
            sign = -sign;
        }
        (sign, a ^ b)
    }

    /// Sign of `alpha` on a blade of grade `k`: `(-1)^(k(k+1)/2)`.
    pub fn alpha_sign(blade: Blade) -> i8 {
        let k = blade.count_ones();
        if (k * (k + 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature{:?}@e{}", self.diag(), self.first_index)
    }
}

/// An element of a Clifford algebra: a sparse combination of blades.
#[derive(Clone, PartialEq)]
pub struct Multivector<T> {
    sig: Signature,
    terms: BTreeMap<Blade, T>,
}

impl<T: Ring> Multivector<T> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: T) -> Self {
        Multivector::blade(sig, 0, c)
    }

    pub fn one(sig: Signature) -> Self {
        Multivector::scalar(sig, T::one())
    }

    pub fn blade(sig: Signature, blade: Blade, c: T) -> Self {
        let mut mv = Multivector::zero(sig);
        mv.add_term(blade, c);
        mv
    }

    /// Generator with display index `i`.
    pub fn e(sig: Signature, i: usize) -> Self {
        Multivector::blade(sig, 1 << sig.bit(i), T::one())
    }

    /// Product of generators `e_{i1} e_{i2} ...` in the order given.
    pub fn product_of(sig: Signature, indices: &[usize]) -> Self {
        indices.iter().fold(Multivector::one(sig), |acc, i| &acc * &Multivector::e(sig, *i))
    }

    /// `sum_j coeffs[j] e_{first + j}`.
    pub fn vector(sig: Signature, coeffs: &[T]) -> Self {
        let mut mv = Multivector::zero(sig);
        for (b, c) in coeffs.iter().enumerate() {
            mv.add_term(1 << b, c.clone());
        }
        mv
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, T)>) -> Self {
        let mut mv = Multivector::zero(sig);
        for (b, c) in terms {
            mv.add_term(b, c);
        }
        mv
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

    /// Coefficient of the blade `e_{i1}^...^e_{ik}` (indices in any order
    /// are sorted; the blade is the increasing product).
    pub fn coeff_of(&self, indices: &[usize]) -> T {
        self.coeff(self.sig.blade(indices))
    }

    pub fn add_term(&mut self, blade: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert_with(T::zero);
        *entry = std::mem::replace(entry, T::zero()) + c;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scalar_part(&self) -> T {
        self.coeff(0)
    }

    /// Coordinates of the grade-1 part, by bit position.
    pub fn vector_part(&self) -> Vec<T> {
        (0..self.sig.dim()).map(|b| self.coeff(1 << b)).collect()
    }

    pub fn grade(&self, k: u32) -> Self {
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().filter(|(b, _)| b.count_ones() == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn is_grade(&self, k: u32) -> bool {
        self.terms.keys().all(|b| b.count_ones() == k)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|b| b.count_ones() % 2 == 1)
    }

    /// The anti-involution with `alpha(x) = -x` on vectors.
    pub fn alpha(&self) -> Self {
        self.map_blades(|b, c| {
            if Signature::alpha_sign(b) == 1 {
                c.clone()
            } else {
                -c.clone()
            }
        })
    }

    /// Grade involution: `(-1)^k` on grade `k`.
    pub fn involute(&self) -> Self {
        self.map_blades(|b, c| if b.count_ones() % 2 == 0 { c.clone() } else { -c.clone() })
    }

    pub fn scale(&self, c: &T) -> Self {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, x)| (*b, x.clone() * c.clone())))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    fn map_blades(&self, f: impl Fn(Blade, &T) -> T) -> Self {
        Multivector { sig: self.sig, terms: self.terms.iter().map(|(b, c)| (*b, f(*b, c))).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Multivector::zero(self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (sign, blade) = self.sig.blade_product(*a, *b);
                let c = ca.clone() * cb.clone();
                out.add_term(blade, if sign > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// The grade-`k` part of `self * other`, skipping every other product.
    pub fn product_grade(&self, other: &Self, k: usize) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Multivector::zero(self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if (a ^ b).count_ones() as usize != k {
                    continue;
                }
                let (sign, blade) = self.sig.blade_product(*a, *b);
                let c = ca.clone() * cb.clone();
                out.add_term(blade, if sign > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Moves the element into another algebra along a blade map.
    pub fn remap(&self, sig: Signature, f: impl Fn(Blade) -> Blade) -> Self {
        Multivector::from_terms(sig, self.terms.iter().map(|(b, c)| (f(*b), c.clone())))
    }

    /// The Euclidean algebra on `e1..en` inside the Lorentzian one on
    /// `e0..e_{n+1}`.
    pub fn euclidean_to_lorentzian(&self) -> Result<Self> {
        if self.sig != Signature::euclidean(self.sig.dim()) {
            return Err(Error::SignatureMismatch(format!("{:?}", self.sig), "euclidean".into()));
        }
        let n = self.sig.dim();
        Ok(self.remap(Signature::lorentzian(n), |b| b << 1))
    }

    /// Inverse of [`Multivector::euclidean_to_lorentzian`]; errors if a blade
    /// involves `e0` or `e_{n+1}`.
    pub fn lorentzian_to_euclidean(&self) -> Result<Self> {
        let n = self.sig.dim().checked_sub(2).ok_or_else(|| Error::OutOfRange("no euclidean part".into()))?;
        if self.sig != Signature::lorentzian(n) {
            return Err(Error::SignatureMismatch(format!("{:?}", self.sig), "lorentzian".into()));
        }
        let outer = 1 | 1 << (n + 1);
        if self.terms.keys().any(|b| b & outer != 0) {
            return Err(Error::InvalidValue("element leaves the euclidean subalgebra".into()));
        }
        Ok(self.remap(Signature::euclidean(n), |b| b >> 1))
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(format!("{:?}", self.sig), format!("{:?}", other.sig)));
        }
        Ok(())
    }
}

impl<T: Field> Multivector<T> {
    /// Inverse of an element with `x alpha(x)` a nonzero scalar.
    pub fn versor_inverse(&self) -> Result<Self> {
        let norm = self.try_mul(&self.alpha())?;
        if !norm.is_grade(0) || norm.is_zero() {
            return Err(Error::NotInvertible(format!("{}", norm.terms.len())));
        }
        Ok(self.alpha().scale(&norm.scalar_part().try_inv()?))
    }
}

impl<T: Ring> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.try_add(rhs).expect("signatures differ")
    }
}

impl<T: Ring> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.try_sub(rhs).expect("signatures differ")
    }
}

impl<T: Ring> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.try_mul(rhs).expect("signatures differ")
    }
}

impl<T: Ring> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.map(|c| -c.clone())
    }
}

/// Deterministic blade order: by grade, then lexicographic in indices.
fn blade_order(a: &Blade, b: &Blade) -> std::cmp::Ordering {
    // Among equal grades, the blade owning the lowest differing generator
    // comes first.
    let low = (a ^ b) & (a ^ b).wrapping_neg();
    a.count_ones().cmp(&b.count_ones()).then(if low == 0 {
        std::cmp::Ordering::Equal
    } else if a & low != 0 {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    })
}

impl<T: Ring + ExactRender> Multivector<T> {
    /// `"1 + 3/2*e1^e3 - e2^e3"`.
    pub fn render(&self) -> String {
        let mut blades: Vec<_> = self.terms.keys().copied().collect();
        blades.sort_by(blade_order);
        render_sum(
            blades.into_iter().map(|b| (self.terms[&b].render(), (b != 0).then(|| self.sig.blade_name(b)))),
            "*",
        )
    }
}

impl<T: Ring + ExactRender> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<T: fmt::Debug> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (b, c) in &self.terms {
            m.entry(&self.sig.blade_name(*b), c);
        }
        m.finish()
    }
}

/// `sum_i e_i e_J e_i` over all generators of a Euclidean algebra.
pub fn sandwich_sum<T: Ring>(sig: Signature, x: &Multivector<T>) -> Multivector<T> {
    let mut acc = Multivector::zero(sig);
    for b in 0..sig.dim() {
        let e = Multivector::blade(sig, 1 << b, T::one());
        acc = &acc + &(&(&e * x) * &e);
    }
    acc
}

/// The value `(-1)^(k-1) (n - 2k)` predicted for [`sandwich_sum`] on a
/// grade-`k` blade of the Euclidean algebra in dimension `n`.
pub fn sandwich_factor<T: Ring>(n: usize, k: usize) -> T {
    let v = n as i64 - 2 * k as i64;
    if k % 2 == 1 {
        int(v)
    } else {
        int(-v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type M = Multivector<Rational>;

    #[test]
    fn generator_squares() {
        let eu = Signature::euclidean(2);
        assert_eq!(&M::e(eu, 1) * &M::e(eu, 1), M::scalar(eu, rational(-1, 1)));
        let lo = Signature::lorentzian(2);
        assert_eq!(&M::e(lo, 0) * &M::e(lo, 0), M::one(lo));
        assert_eq!(&M::e(lo, 3) * &M::e(lo, 3), M::scalar(lo, rational(-1, 1)));
    }

    #[test]
    fn anticommutation() {
        let sig = Signature::lorentzian(3);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let a = &M::e(sig, i) * &M::e(sig, j);
                    let b = &M::e(sig, j) * &M::e(sig, i);
                    assert_eq!(a, -&b);
                }
            }
        }
    }

    #[test]
    fn sandwich_lemma_example() {
        let sig = Signature::euclidean(3);
        let e1 = M::e(sig, 1);
        assert_eq!(sandwich_sum(sig, &e1), e1);
    }

    #[test]
    fn alpha_examples() {
        let sig = Signature::euclidean(2);
        let (e1, e2) = (M::e(sig, 1), M::e(sig, 2));
        assert_eq!(e1.alpha(), -&e1);
        let e12 = &e1 * &e2;
        assert_eq!(e12.alpha(), -&e12);
        assert_eq!(&e12 * &e12.alpha(), M::one(sig));
    }

    #[test]
    fn mismatched_signatures() {
        let a = M::e(Signature::euclidean(2), 1);
        let b = M::e(Signature::euclidean(3), 1);
        assert!(matches!(a.try_mul(&b), Err(Error::SignatureMismatch(..))));
    }

    #[test]
    fn render_order() {
        let sig = Signature::euclidean(3);
        let x = &(&M::blade(sig, 0b101, rational(3, 2)) + &M::e(sig, 2)) - &M::one(sig);
        assert_eq!(x.render(), "-1 + e2 + 3/2*e1^e3");
    }

    #[test]
    fn embedding_round_trip() {
        let sig = Signature::euclidean(3);
        let x = &M::e(sig, 1) * &M::e(sig, 3);
        let y = x.euclidean_to_lorentzian().unwrap();
        assert_eq!(y.coeff_of(&[1, 3]), rational(1, 1));
        assert_eq!(y.lorentzian_to_euclidean().unwrap(), x);
    }
}
