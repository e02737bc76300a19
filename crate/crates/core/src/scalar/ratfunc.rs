use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactRender, Field, FromRational, ImaginaryUnit, Monomial, MultiPoly, Rational, Var};
use crate::error::{Error, Result};

impl<C: Field> MultiPoly<C> {
    /// Exact quotient `self / d` when `d` divides `self`, by leading-term
    /// division in the graded-lex order.
    pub fn div_exact(&self, d: &MultiPoly<C>) -> Option<MultiPoly<C>> {
        let (dm, dc) = d.leading()?;
        let (dm, dc_inv) = (*dm, dc.try_inv().ok()?);
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&dm)?;
            let qc = c.clone() * dc_inv.clone();
            rem -= &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly<C> {
        match self.leading() {
            Some((_, c)) => self.scale(&c.try_inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms().map(|(m, _)| *m);
        let first = it.next().unwrap_or_default();
        it.fold(first, |g, m| g.gcd(&m))
    }
}

/// Quotient of two polynomials, compared by cross-multiplication.
///
/// Arithmetic never reduces; [`RationalFunction::reduced`] applies cheap
/// cancellations (exact division, monomial and scalar content) before
/// rendering.
#[derive(Clone)]
pub struct RationalFunction<C> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

impl<C: Field> RationalFunction<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    pub fn var(v: Var) -> Self {
        RationalFunction::from_poly(MultiPoly::var(v))
    }

    pub fn numer(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<C> {
        &self.den
    }

    /// Polynomial value when the denominator divides the numerator.
    pub fn as_poly(&self) -> Option<MultiPoly<C>> {
        self.num.div_exact(&self.den)
    }

    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(q) = self.as_poly() {
            return RationalFunction::from_poly(q);
        }
        let g = {
            let a = self.num.monomial_content();
            a.gcd(&self.den.monomial_content())
        };
        let strip = |p: &MultiPoly<C>| {
            MultiPoly::from_terms(p.terms().map(|(m, c)| (m.div(&g).expect("content divides"), c.clone())))
        };
        let (num, den) = (strip(&self.num), strip(&self.den));
        let lead = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lead.try_inv().expect("nonzero leading coefficient");
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn substitute(&self, v: Var, q: &MultiPoly<C>) -> Result<Self> {
        RationalFunction::new(self.num.substitute(v, q), self.den.substitute(v, q))
    }
}

/// True iff `f` is the zero function.
pub fn frac_is_zero<C: Field>(f: &RationalFunction<C>) -> bool {
    f.num.is_zero()
}

impl<C: Field> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Field> Zero for RationalFunction<C> {
    fn zero() -> Self {
        RationalFunction::from_poly(MultiPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for RationalFunction<C> {
    fn one() -> Self {
        RationalFunction::from_poly(MultiPoly::one())
    }
}

impl<C: Field> Add for RationalFunction<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RationalFunction { num: self.num + rhs.num, den: self.den };
        }
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<C: Field> Sub for RationalFunction<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Field> Mul for RationalFunction<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl<C: Field> Neg for RationalFunction<C> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl<C: Field> Div for RationalFunction<C> {
    type Output = Self;
    /// Panics on division by zero; use [`Field::try_div`] to get an error.
    fn div(self, rhs: Self) -> Self {
        self.try_div(&rhs).expect("division by the zero rational function")
    }
}

impl<C: Field> Field for RationalFunction<C> {
    fn try_inv(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl<C: Field + FromRational> FromRational for RationalFunction<C> {
    fn from_rational(q: &Rational) -> Self {
        RationalFunction::from_poly(MultiPoly::from_rational(q))
    }
}

impl<C: Field + ImaginaryUnit> ImaginaryUnit for RationalFunction<C> {
    fn imag_unit() -> Self {
        RationalFunction::from_poly(MultiPoly::imag_unit())
    }
}

/// Expanded numerator over expanded denominator, after [`reduced`]
/// (`RationalFunction::reduced`); a unit denominator is omitted.
impl<C: Field + ExactRender> ExactRender for RationalFunction<C> {
    fn render(&self) -> String {
        let r = self.reduced();
        if r.den.is_one() {
            return r.num.render();
        }
        let wrap = |p: &MultiPoly<C>| {
            if p.num_terms() == 1 && !p.render().contains(' ') {
                p.render()
            } else {
                format!("({})", p.render())
            }
        };
        format!("{}/{}", wrap(&r.num), wrap(&r.den))
    }
}

impl<C: Field + ExactRender> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    type P = MultiPoly<Rational>;
    type F = RationalFunction<Rational>;

    fn s() -> P {
        P::var(Var::S)
    }
    fn c(n: i64) -> P {
        P::from_int(n)
    }

    #[test]
    fn zero_tests() {
        let lhs = &(&s() + &c(1)) * &(&s() + &c(2));
        let rhs = &(&(&s() * &s()) + &(&s() * &c(3))) + &c(2);
        let f = F::new(&lhs - &rhs, &s() + &c(5)).unwrap();
        assert!(frac_is_zero(&f));
        assert!(!frac_is_zero(&F::new(c(1), &s() + &c(1)).unwrap()));
        assert_eq!(F::new(c(1), P::zero()).err(), Some(Error::DivisionByZero));
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = F::new(&s() + &c(1), &s() - &c(1)).unwrap();
        let k = &s() * &s() + c(7);
        let b = F::new(&(&s() + &c(1)) * &k, &(&s() - &c(1)) * &k).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.clone() - b, F::zero());
        assert_eq!(a.clone() * a.try_inv().unwrap(), F::one());
    }

    #[test]
    fn reduction_before_rendering() {
        let num = &(&s() * &s()) - &c(1);
        let f = F::new(num, &s() - &c(1)).unwrap();
        assert_eq!(f.render(), "s + 1");
        let g = F::new(P::constant(rational(2, 1)) * s(), &s() * &(&s() + &c(3))).unwrap();
        assert_eq!(g.render(), "2/(s + 3)");
    }

    #[test]
    fn exact_division() {
        let a = &s() + &c(2);
        let b = &P::var(Var::T) - &s();
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }
}
