use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{int, render_sum, ExactRender, FromRational, ImaginaryUnit, Rational, Ring};
use crate::error::{Error, Result};

/// Largest spatial dimension the fixed variable layout can hold.
pub const MAX_DIM: usize = 6;
/// Number of indeterminate slots in a [`Monomial`].
pub const NVARS: usize = 32;

const X0: u8 = 0;
const Y0: u8 = X0 + MAX_DIM as u8;
const XI0: u8 = Y0 + MAX_DIM as u8;
const ZETA0: u8 = XI0 + MAX_DIM as u8;
const PARAM0: u8 = ZETA0 + MAX_DIM as u8;
const AUX0: u8 = PARAM0 + 4;

/// An indeterminate.
///
/// The layout is fixed: two spatial blocks `x`, `y`, their cotangent
/// partners `xi`, `zeta`, the formal parameters `s, t, lambda, mu`, and a
/// few auxiliary slots.  Spatial indices are 1-based as in the usual
/// notation.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

/// Which block a variable belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
    Xi,
    Zeta,
    Param,
    Aux,
}

impl Var {
    pub const S: Var = Var(PARAM0);
    pub const T: Var = Var(PARAM0 + 1);
    pub const LAMBDA: Var = Var(PARAM0 + 2);
    pub const MU: Var = Var(PARAM0 + 3);

    fn spatial(base: u8, i: usize) -> Var {
        assert!((1..=MAX_DIM).contains(&i), "spatial index {i} out of range");
        Var(base + (i - 1) as u8)
    }

    pub fn x(i: usize) -> Var {
        Var::spatial(X0, i)
    }
    pub fn y(i: usize) -> Var {
        Var::spatial(Y0, i)
    }
    pub fn xi(i: usize) -> Var {
        Var::spatial(XI0, i)
    }
    pub fn zeta(i: usize) -> Var {
        Var::spatial(ZETA0, i)
    }
    pub fn aux(i: usize) -> Var {
        assert!(i < NVARS - AUX0 as usize);
        Var(AUX0 + i as u8)
    }

    /// Variable `i` (1-based) of a spatial block.
    pub fn in_block(block: Block, i: usize) -> Var {
        match block {
            Block::X => Var::x(i),
            Block::Y => Var::y(i),
            Block::Xi => Var::xi(i),
            Block::Zeta => Var::zeta(i),
            Block::Param | Block::Aux => panic!("not a spatial block"),
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn block(self) -> Block {
        match self.0 {
            v if v < Y0 => Block::X,
            v if v < XI0 => Block::Y,
            v if v < ZETA0 => Block::Xi,
            v if v < PARAM0 => Block::Zeta,
            v if v < AUX0 => Block::Param,
            _ => Block::Aux,
        }
    }

    /// 1-based position inside the block.
    pub fn position(self) -> usize {
        let base = match self.block() {
            Block::X => X0,
            Block::Y => Y0,
            Block::Xi => XI0,
            Block::Zeta => ZETA0,
            Block::Param => PARAM0,
            Block::Aux => AUX0,
        };
        (self.0 - base) as usize + 1
    }

    /// Cotangent partner: `x_i -> xi_i`, `y_i -> zeta_i`.
    pub fn dual(self) -> Option<Var> {
        match self.block() {
            Block::X => Some(Var::xi(self.position())),
            Block::Y => Some(Var::zeta(self.position())),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        let i = self.position();
        match self.block() {
            Block::X => format!("x{i}"),
            Block::Y => format!("y{i}"),
            Block::Xi => format!("xi{i}"),
            Block::Zeta => format!("zeta{i}"),
            Block::Param => ["s", "t", "lambda", "mu"][i - 1].to_string(),
            Block::Aux => format!("a{i}"),
        }
    }

    pub fn latex(self) -> String {
        let i = self.position();
        match self.block() {
            Block::X => format!("x_{{{i}}}"),
            Block::Y => format!("y_{{{i}}}"),
            Block::Xi => format!("\\xi_{{{i}}}"),
            Block::Zeta => format!("\\zeta_{{{i}}}"),
            Block::Param => ["s", "t", "\\lambda", "\\mu"][i - 1].to_string(),
            Block::Aux => format!("a_{{{i}}}"),
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "s" => return Some(Var::S),
            "t" => return Some(Var::T),
            "lambda" => return Some(Var::LAMBDA),
            "mu" => return Some(Var::MU),
            _ => {}
        }
        let split = name.find(|c: char| c.is_ascii_digit())?;
        let (prefix, digits) = name.split_at(split);
        let i: usize = digits.parse().ok()?;
        match prefix {
            "x" | "y" | "xi" | "zeta" if !(1..=MAX_DIM).contains(&i) => None,
            "x" => Some(Var::x(i)),
            "y" => Some(Var::y(i)),
            "xi" => Some(Var::xi(i)),
            "zeta" => Some(Var::zeta(i)),
            "a" if i >= 1 && i <= NVARS - AUX0 as usize => Some(Var::aux(i - 1)),
            _ => None,
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over the fixed variable layout, ordered by total degree
/// and then lexicographically.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u16,
    exps: [u8; NVARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { degree: 0, exps: [0; NVARS] }
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u8) -> Self {
        let mut m = Monomial::one();
        m.exps[v.index()] = e;
        m.degree = e as u16;
        m
    }

    pub fn exponent(&self, v: Var) -> u8 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn with_exponent(mut self, v: Var, e: u8) -> Self {
        let old = self.exps[v.index()];
        self.exps[v.index()] = e;
        self.degree = self.degree - old as u16 + e as u16;
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        let degree = exps.iter().map(|e| *e as u16).sum();
        Monomial { degree, exps }
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a >= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divisible_by(other) {
            return None;
        }
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u8)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (Var(i as u8), *e))
    }

    fn render_with(&self, name: impl Fn(Var) -> String, mul: &str) -> String {
        self.vars()
            .map(|(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
            .collect::<Vec<_>>()
            .join(mul)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.render_with(|v| v.name(), "*"))
        }
    }
}

/// Sparse multivariate polynomial with coefficients in `C`.
///
/// No zero coefficient is ever stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for MultiPoly<C> {
    fn default() -> Self {
        MultiPoly::zero()
    }
}

impl<C: Ring> MultiPoly<C> {
    pub fn constant(c: C) -> Self {
        MultiPoly::monomial(c, Monomial::one())
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(C::one(), Monomial::var(v))
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(int(n))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> usize {
        self.terms.keys().map(|m| m.exponent(v) as usize).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v)).collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly::from_terms(self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn diff(&self, v: Var) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(m.with_exponent(v, e - 1), c.clone() * int(e as i64));
            }
        }
        out
    }

    /// Repeated partial derivative `d^k/dv^k`.
    pub fn diff_n(&self, v: Var, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.diff(v);
        }
        p
    }

    /// Substitute `v := q`.
    pub fn substitute(&self, v: Var, q: &MultiPoly<C>) -> Self {
        let mut map = HashMap::new();
        map.insert(v, q.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &HashMap<Var, MultiPoly<C>>) -> Self {
        let mut powers: HashMap<(Var, u8), MultiPoly<C>> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = MultiPoly::constant(c.clone());
            for (v, e) in m.vars() {
                if let Some(q) = map.get(&v) {
                    rest = rest.with_exponent(v, 0);
                    let p = powers
                        .entry((v, e))
                        .or_insert_with(|| q.pow(e as u32))
                        .clone();
                    factor = &factor * &p;
                }
            }
            for (mm, cc) in factor.terms {
                out.add_term(mm.mul(&rest), cc);
            }
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Splits off the part of each monomial in `vars`, grouping the
    /// remaining cofactors: `p = sum_k k * q_k` with `k` over monomials in
    /// `vars`.
    pub fn split_by(&self, vars: &[Var]) -> BTreeMap<Monomial, MultiPoly<C>> {
        let mut out: BTreeMap<Monomial, MultiPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut head = Monomial::one();
            let mut rest = *m;
            for v in vars {
                let e = m.exponent(*v);
                if e > 0 {
                    head = head.with_exponent(*v, e);
                    rest = rest.with_exponent(*v, 0);
                }
            }
            out.entry(head).or_default().add_term(rest, c.clone());
        }
        out
    }
}

impl<C: Ring + FromRational> MultiPoly<C> {
    pub fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(C::from_rational(q))
    }
}

impl<C: Ring + FromRational> FromRational for MultiPoly<C> {
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(C::from_rational(q))
    }
}

impl<C: ImaginaryUnit> ImaginaryUnit for MultiPoly<C> {
    fn imag_unit() -> Self {
        MultiPoly::constant(C::imag_unit())
    }
}

impl<C: Ring> Zero for MultiPoly<C> {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for MultiPoly<C> {
    fn one() -> Self {
        MultiPoly::constant(C::one())
    }
}

impl<C: Ring> AddAssign<&MultiPoly<C>> for MultiPoly<C> {
    fn add_assign(&mut self, rhs: &MultiPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Ring> SubAssign<&MultiPoly<C>> for MultiPoly<C> {
    fn sub_assign(&mut self, rhs: &MultiPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<C: Ring> Add<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Ring> Sub<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Ring> Mul<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Ring> Add for MultiPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl<C: Ring> Sub for MultiPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Mul for MultiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> Neg for MultiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Ring + ExactRender> MultiPoly<C> {
    /// Expanded form, highest graded-lex monomial first, e.g.
    /// `"4*lambda^2 - 2*lambda*n + x1"`.
    pub fn render_with(&self, name: impl Fn(Var) -> String, mul: &str) -> String {
        render_sum(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c.render(), (!m.is_one()).then(|| m.render_with(&name, mul)))),
            mul,
        )
    }

    pub fn latex(&self) -> String {
        self.render_with(|v| v.latex(), " ").replace("*i", "\\,i")
    }
}

impl<C: Ring + ExactRender> ExactRender for MultiPoly<C> {
    fn render(&self) -> String {
        self.render_with(|v| v.name(), "*")
    }
}

impl<C: Ring + ExactRender> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Ring + ExactRender> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An ordered list of named indeterminates; name lookups outside the list
/// are errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<Var>,
}

impl PolyRing {
    pub fn new(vars: Vec<Var>) -> Self {
        PolyRing { vars }
    }

    pub fn from_names(names: &[&str]) -> Result<Self> {
        names
            .iter()
            .map(|n| Var::from_name(n).ok_or_else(|| Error::UnknownIndeterminate(n.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(PolyRing::new)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name()).collect()
    }

    pub fn lookup(&self, name: &str) -> Result<Var> {
        self.vars
            .iter()
            .copied()
            .find(|v| v.name() == name)
            .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))
    }

    pub fn var<C: Ring>(&self, name: &str) -> Result<MultiPoly<C>> {
        self.lookup(name).map(MultiPoly::var)
    }

    pub fn diff<C: Ring>(&self, p: &MultiPoly<C>, name: &str) -> Result<MultiPoly<C>> {
        let v = self.lookup(name)?;
        Ok(p.diff(v))
    }

    pub fn contains(&self, p: &MultiPoly<impl Ring>) -> bool {
        p.vars().iter().all(|v| self.vars.contains(v))
    }
}
