use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, Block, ImaginaryUnit, Monomial, MultiPoly, Ring, Var, MAX_DIM};

/// Multi-index `(alpha, beta)` of `d_x^alpha d_y^beta`, ordered by total
/// order and then lexicographically in `(alpha, beta)`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DerivIndex {
    total: u16,
    exps: [u8; 2 * MAX_DIM],
}

impl DerivIndex {
    pub fn zero() -> Self {
        DerivIndex::default()
    }

    pub fn new(alpha: &[u8], beta: &[u8]) -> Self {
        assert!(alpha.len() <= MAX_DIM && beta.len() <= MAX_DIM);
        let mut d = DerivIndex::zero();
        for (j, a) in alpha.iter().enumerate() {
            d.exps[j] = *a;
        }
        for (j, b) in beta.iter().enumerate() {
            d.exps[MAX_DIM + j] = *b;
        }
        d.total = d.exps.iter().map(|e| *e as u16).sum();
        d
    }

    /// `d/dx_j` (`block = X`) or `d/dy_j` (`block = Y`), 1-based.
    pub fn unit(block: Block, j: usize) -> Self {
        let mut d = DerivIndex::zero();
        d.exps[slot(block, j)] = 1;
        d.total = 1;
        d
    }

    pub fn alpha(&self, n: usize) -> Vec<u8> {
        self.exps[..n].to_vec()
    }

    pub fn beta(&self, n: usize) -> Vec<u8> {
        self.exps[MAX_DIM..MAX_DIM + n].to_vec()
    }

    pub fn order(&self) -> usize {
        self.total as usize
    }

    pub fn order_x(&self) -> usize {
        self.exps[..MAX_DIM].iter().map(|e| *e as usize).sum()
    }

    pub fn order_y(&self) -> usize {
        self.exps[MAX_DIM..].iter().map(|e| *e as usize).sum()
    }

    pub fn get(&self, block: Block, j: usize) -> u8 {
        self.exps[slot(block, j)]
    }

    pub fn add(&self, other: &DerivIndex) -> DerivIndex {
        let mut d = *self;
        for (a, b) in d.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        d.total += other.total;
        d
    }

    pub fn sub(&self, other: &DerivIndex) -> Option<DerivIndex> {
        let mut d = *self;
        for (a, b) in d.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        d.total -= other.total;
        Some(d)
    }

    /// All `gamma <= self` componentwise.
    pub fn below(&self) -> Vec<DerivIndex> {
        let mut out = vec![DerivIndex::zero()];
        for (slot, e) in self.exps.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for g in &out {
                for k in 0..=*e {
                    let mut h = *g;
                    h.exps[slot] = k;
                    h.total += k as u16;
                    next.push(h);
                }
            }
            out = next;
        }
        out
    }

    /// `prod_i binom(self_i, gamma_i)`.
    pub fn binomial(&self, gamma: &DerivIndex) -> i64 {
        self.exps.iter().zip(gamma.exps.iter()).fold(1, |acc, (a, g)| acc * binom(*a as i64, *g as i64))
    }

    /// `prod_i self_i!`.
    pub fn factorial(&self) -> i64 {
        self.exps.iter().fold(1, |acc, e| acc * (1..=*e as i64).product::<i64>())
    }

    /// The variables `x_j`/`y_j` with multiplicity, for differentiating
    /// coefficients.
    fn vars(&self) -> impl Iterator<Item = (Var, u8)> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(s, e)| {
            let v = if s < MAX_DIM { Var::x(s + 1) } else { Var::y(s - MAX_DIM + 1) };
            (v, *e)
        })
    }

    /// Monomial `prod xi^alpha zeta^beta` in the cotangent variables.
    pub fn cotangent_monomial(&self) -> Monomial {
        self.vars().fold(Monomial::one(), |m, (v, e)| m.with_exponent(v.dual().expect("spatial"), e))
    }

    fn render(&self, two_blocks: bool) -> String {
        let mut parts = Vec::new();
        for (v, e) in self.vars() {
            if !two_blocks && v.block() == Block::Y {
                continue;
            }
            parts.push(if e == 1 { format!("d{}", v.name()) } else { format!("d{}^{}", v.name(), e) });
        }
        parts.join("*")
    }
}

impl fmt::Debug for DerivIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(true);
        f.write_str(if s.is_empty() { "1" } else { &s })
    }
}

fn slot(block: Block, j: usize) -> usize {
    assert!((1..=MAX_DIM).contains(&j));
    match block {
        Block::X => j - 1,
        Block::Y => MAX_DIM + j - 1,
        _ => panic!("derivatives are only taken in x or y"),
    }
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Differential operator `sum P_{alpha,beta}(x, y) d_x^alpha d_y^beta` with
/// matrix-valued polynomial coefficients written to the left.
///
/// Coefficient polynomials may also involve the formal parameters; only
/// the `x` and `y` variables are differentiated.
#[derive(Clone, PartialEq)]
pub struct WeylOperator<C> {
    n: usize,
    two_blocks: bool,
    rows: usize,
    cols: usize,
    terms: BTreeMap<DerivIndex, Matrix<MultiPoly<C>>>,
}

pub type PolyMat<C> = Matrix<MultiPoly<C>>;

fn add_into<C: Ring>(acc: &mut PolyMat<C>, m: &PolyMat<C>) {
    for i in 0..acc.rows() {
        for j in 0..acc.cols() {
            let b = m.get(i, j);
            if b.is_zero() {
                continue;
            }
            let mut a = std::mem::take(acc.get_mut(i, j));
            a += b;
            acc.set(i, j, a);
        }
    }
}

fn mat_is_zero<C: Ring>(m: &PolyMat<C>) -> bool {
    m.entries().all(|p| p.is_zero())
}

impl<C: Ring> WeylOperator<C> {
    /// The zero operator on functions of `x` (and `y` when `two_blocks`)
    /// with values in `C^cols`, landing in `C^rows`.
    pub fn zero(n: usize, two_blocks: bool, rows: usize, cols: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        WeylOperator { n, two_blocks, rows, cols, terms: BTreeMap::new() }
    }

    /// Multiplication by a matrix of polynomials.
    pub fn multiplication(n: usize, two_blocks: bool, m: PolyMat<C>) -> Self {
        let mut op = WeylOperator::zero(n, two_blocks, m.rows(), m.cols());
        op.add_term(DerivIndex::zero(), m);
        op
    }

    pub fn identity(n: usize, two_blocks: bool, size: usize) -> Self {
        WeylOperator::multiplication(n, two_blocks, Matrix::identity(size))
    }

    /// `c * d^index` with a scalar-times-identity coefficient.
    pub fn monomial(n: usize, two_blocks: bool, size: usize, index: DerivIndex, c: MultiPoly<C>) -> Self {
        let mut op = WeylOperator::zero(n, two_blocks, size, size);
        op.add_term(index, Matrix::scalar(size, c));
        op
    }

    /// `d/dx_j` or `d/dy_j` times the identity.
    pub fn partial(n: usize, two_blocks: bool, size: usize, block: Block, j: usize) -> Self {
        WeylOperator::monomial(n, two_blocks, size, DerivIndex::unit(block, j), MultiPoly::one())
    }

    /// `sum_j d^2/dv_j^2` on the given block.
    pub fn laplacian(n: usize, two_blocks: bool, size: usize, block: Block) -> Self {
        let mut op = WeylOperator::zero(n, two_blocks, size, size);
        for j in 1..=n {
            let d = DerivIndex::unit(block, j);
            op.add_term(d.add(&d), Matrix::identity(size));
        }
        op
    }

    pub fn from_terms(
        n: usize,
        two_blocks: bool,
        rows: usize,
        cols: usize,
        terms: impl IntoIterator<Item = (DerivIndex, PolyMat<C>)>,
    ) -> Result<Self> {
        let mut op = WeylOperator::zero(n, two_blocks, rows, cols);
        for (d, m) in terms {
            if m.shape() != (rows, cols) {
                return Err(Error::DimensionMismatch(format!("coefficient {:?} in {rows}x{cols} operator", m.shape())));
            }
            op.add_term(d, m);
        }
        Ok(op)
    }

    pub fn add_term(&mut self, d: DerivIndex, m: PolyMat<C>) {
        assert_eq!(m.shape(), (self.rows, self.cols), "coefficient shape");
        if mat_is_zero(&m) {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(acc) => {
                add_into(acc, &m);
                if mat_is_zero(acc) {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, m);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn two_blocks(&self) -> bool {
        self.two_blocks
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &PolyMat<C>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, d: &DerivIndex) -> PolyMat<C> {
        self.terms.get(d).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(|d| d.order()).max().unwrap_or(0)
    }

    pub fn order_x(&self) -> usize {
        self.terms.keys().map(|d| d.order_x()).max().unwrap_or(0)
    }

    pub fn order_y(&self) -> usize {
        self.terms.keys().map(|d| d.order_y()).max().unwrap_or(0)
    }

    /// Same operator viewed on functions of `(x, y)`.
    pub fn with_two_blocks(&self) -> Self {
        WeylOperator { two_blocks: true, ..self.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if (self.n, self.rows, self.cols) != (other.n, other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "adding {}x{} (n = {}) to {}x{} (n = {})",
                self.rows, self.cols, self.n, other.rows, other.cols, other.n
            )));
        }
        let mut out = self.clone();
        out.two_blocks |= other.two_blocks;
        for (d, m) in &other.terms {
            out.add_term(*d, m.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|m| -m)
    }

    pub fn scale(&self, c: &MultiPoly<C>) -> Self {
        self.map_coeffs(|m| m.scale(c))
    }

    /// Left multiplication by a matrix of polynomials.
    pub fn left_mul(&self, m: &PolyMat<C>) -> Result<Self> {
        let mut out = WeylOperator::zero(self.n, self.two_blocks, m.rows(), self.cols);
        for (d, c) in &self.terms {
            out.add_term(*d, m.try_mul(c)?);
        }
        Ok(out)
    }

    /// Right multiplication by a constant matrix (no coefficient in `x, y`).
    pub fn right_mul_const(&self, m: &PolyMat<C>) -> Result<Self> {
        let mut out = WeylOperator::zero(self.n, self.two_blocks, self.rows, m.cols());
        for (d, c) in &self.terms {
            out.add_term(*d, c.try_mul(m)?);
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&PolyMat<C>) -> PolyMat<C>) -> Self {
        let mut out = WeylOperator::zero(self.n, self.two_blocks, self.rows, self.cols);
        for (d, m) in &self.terms {
            let m = f(m);
            out.rows = m.rows();
            out.cols = m.cols();
            out.add_term(*d, m);
        }
        out
    }

    /// Applies `f` to every polynomial entry.
    pub fn map_entries(&self, f: impl Fn(&MultiPoly<C>) -> MultiPoly<C> + Sync) -> Self {
        let terms: Vec<_> = self.terms.iter().collect();
        let mapped: Vec<_> = terms.par_iter().map(|(d, m)| (**d, m.map(&f))).collect();
        let mut out = WeylOperator::zero(self.n, self.two_blocks, self.rows, self.cols);
        for (d, m) in mapped {
            out.add_term(d, m);
        }
        out
    }

    pub fn substitute(&self, v: Var, q: &MultiPoly<C>) -> Self {
        self.map_entries(|p| p.substitute(v, q))
    }

    pub fn substitute_all(&self, map: &HashMap<Var, MultiPoly<C>>) -> Self {
        self.map_entries(|p| p.substitute_all(map))
    }

    /// Composition `self o other`, normal ordered by the Leibniz rule
    /// `d^a (Q .) = sum_{g <= a} binom(a, g) (d^g Q) d^(a - g)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "composing {}x{} (n = {}) with {}x{} (n = {})",
                self.rows, self.cols, self.n, other.rows, other.cols, other.n
            )));
        }
        // Derivatives of the right coefficients, shared by all left terms.
        let mut bound = DerivIndex::zero();
        for d in self.terms.keys() {
            for (s, e) in d.exps.iter().enumerate() {
                bound.exps[s] = bound.exps[s].max(*e);
            }
        }
        bound.total = bound.exps.iter().map(|e| *e as u16).sum();
        let right: Vec<(DerivIndex, HashMap<DerivIndex, PolyMat<C>>)> = other
            .terms
            .par_iter()
            .map(|(beta, q)| (*beta, derivative_table(q, &bound)))
            .collect();

        let left: Vec<_> = self.terms.iter().collect();
        let partials: Vec<BTreeMap<DerivIndex, PolyMat<C>>> = left
            .par_iter()
            .map(|(alpha, p)| {
                let mut acc: BTreeMap<DerivIndex, PolyMat<C>> = BTreeMap::new();
                let gammas = alpha.below();
                for (beta, table) in &right {
                    for gamma in &gammas {
                        let Some(dq) = table.get(gamma) else { continue };
                        let coeff = alpha.binomial(gamma);
                        let mut prod = p.try_mul(dq).expect("shapes checked");
                        if coeff != 1 {
                            let c: C = int(coeff);
                            prod = prod.map(|e| e.scale(&c));
                        }
                        let out = alpha.sub(gamma).expect("gamma below alpha").add(beta);
                        match acc.get_mut(&out) {
                            Some(m) => add_into(m, &prod),
                            None => {
                                acc.insert(out, prod);
                            }
                        }
                    }
                }
                acc
            })
            .collect();

        let mut result = WeylOperator::zero(self.n, self.two_blocks || other.two_blocks, self.rows, other.cols);
        for part in partials {
            for (d, m) in part {
                result.add_term(d, m);
            }
        }
        Ok(result)
    }

    /// `self o other - other o self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.try_sub(&other.compose(self)?)
    }

    /// Applies the operator to a matrix of polynomials whose rows match the
    /// operator's columns.
    pub fn apply(&self, f: &PolyMat<C>) -> Result<PolyMat<C>> {
        if f.rows() != self.cols {
            return Err(Error::DimensionMismatch(format!("operator with {} columns applied to {} rows", self.cols, f.rows())));
        }
        let mut out = Matrix::zeros(self.rows, f.cols());
        for (d, m) in &self.terms {
            let df = f.map(|p| {
                d.vars().fold(p.clone(), |acc, (v, e)| acc.diff_n(v, e as usize))
            });
            add_into(&mut out, &m.try_mul(&df)?);
        }
        Ok(out)
    }

    /// The operator `F -> (self F)(x, x)`, with coefficients restricted to
    /// the diagonal `y = x`; it still acts on functions of `(x, y)`.
    pub fn restrict_diagonal(&self) -> Self {
        let map: HashMap<Var, MultiPoly<C>> = (1..=self.n).map(|j| (Var::y(j), MultiPoly::var(Var::x(j)))).collect();
        self.substitute_all(&map)
    }

    /// For an operator `D` in `x` alone, the operator `D'` on functions of
    /// `(x, y)` with `D(F(x, x)) = (D' F)(x, x)`: each `d_x^a` becomes
    /// `(d_x + d_y)^a`.
    pub fn lift_diagonal(&self) -> Result<Self> {
        if self.order_y() > 0 {
            return Err(Error::InvalidValue("lifting needs an operator in x alone".into()));
        }
        let mut out = WeylOperator::zero(self.n, true, self.rows, self.cols);
        for (d, m) in &self.terms {
            for split in d.below() {
                // split = part taken by d_x; the rest moves to d_y.
                let rest = d.sub(&split).expect("below");
                let mut moved = DerivIndex::zero();
                for j in 1..=self.n {
                    moved.exps[slot(Block::Y, j)] = rest.exps[slot(Block::X, j)];
                }
                moved.total = rest.total;
                let c = d.binomial(&split);
                let coeff = if c == 1 { m.clone() } else { m.map(|p| p.scale(&int(c))) };
                out.add_term(split.add(&moved), coeff);
            }
        }
        Ok(out)
    }

    /// Whether every coefficient is a function of `x - y` alone.
    pub fn depends_on_difference_only(&self) -> bool {
        let map: HashMap<Var, MultiPoly<C>> = (1..=self.n)
            .map(|j| (Var::x(j), &MultiPoly::var(Var::x(j)) + &MultiPoly::var(Var::y(j))))
            .collect();
        // Under x -> x + y every coefficient f(x - y) becomes f(x), free of y.
        self.terms.values().all(|m| {
            m.entries().all(|p| {
                let shifted = p.substitute_all(&map);
                (1..=self.n).all(|j| shifted.degree_in(Var::y(j)) == 0)
            })
        })
    }

    /// Whether every coefficient is free of `x` and `y`.
    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.values().all(|m| {
            m.entries().all(|p| {
                p.vars().iter().all(|v| !matches!(v.block(), Block::X | Block::Y))
            })
        })
    }
}

impl<C: Ring> WeylOperator<C> {
    /// Sum of two operators of identical shape; panics on mismatch.
    pub fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("operator shapes")
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.try_sub(other).expect("operator shapes")
    }

    pub fn then(&self, other: &Self) -> Self {
        other.compose(self).expect("compatible operators")
    }
}

/// `d^gamma Q` for all `gamma <= bound` with nonzero result.
fn derivative_table<C: Ring>(q: &PolyMat<C>, bound: &DerivIndex) -> HashMap<DerivIndex, PolyMat<C>> {
    let mut table = HashMap::new();
    table.insert(DerivIndex::zero(), q.clone());
    let mut frontier = vec![(DerivIndex::zero(), q.clone())];
    let slots: Vec<usize> = (0..2 * MAX_DIM).filter(|s| bound.exps[*s] > 0).collect();
    while let Some((g, m)) = frontier.pop() {
        // Only extend in slots at or after the last used one, so each
        // multi-index is produced once.
        let last = (0..2 * MAX_DIM).rev().find(|s| g.exps[*s] > 0).unwrap_or(0);
        for &s in &slots {
            if s < last || g.exps[s] >= bound.exps[s] {
                continue;
            }
            let v = if s < MAX_DIM { Var::x(s + 1) } else { Var::y(s - MAX_DIM + 1) };
            let dm = m.map(|p| p.diff(v));
            if mat_is_zero(&dm) {
                continue;
            }
            let mut h = g;
            h.exps[s] += 1;
            h.total += 1;
            table.insert(h, dm.clone());
            frontier.push((h, dm));
        }
    }
    table
}

impl<C: Ring + ImaginaryUnit> WeylOperator<C> {
    /// Total symbol: `d_x^a d_y^b -> (i xi)^a (i zeta)^b`.
    pub fn symbol(&self) -> PolyMat<C> {
        let i = MultiPoly::<C>::imag_unit();
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (d, m) in &self.terms {
            let factor = MultiPoly::monomial(C::one(), d.cotangent_monomial());
            let phase = i.pow(d.order() as u32);
            let factor = &factor * &phase;
            add_into(&mut out, &m.map(|p| p * &factor));
        }
        out
    }

    /// Inverse of [`WeylOperator::symbol`].
    pub fn from_symbol(n: usize, two_blocks: bool, sym: &PolyMat<C>) -> Self {
        let cot: Vec<Var> = (1..=n).flat_map(|j| [Var::xi(j), Var::zeta(j)]).collect();
        let minus_i = -C::imag_unit();
        let mut buckets: BTreeMap<DerivIndex, PolyMat<C>> = BTreeMap::new();
        for r in 0..sym.rows() {
            for c in 0..sym.cols() {
                for (head, rest) in sym.get(r, c).split_by(&cot) {
                    let mut alpha = vec![0u8; n];
                    let mut beta = vec![0u8; n];
                    for (v, e) in head.vars() {
                        match v.block() {
                            Block::Xi => alpha[v.position() - 1] = e,
                            _ => beta[v.position() - 1] = e,
                        }
                    }
                    let d = DerivIndex::new(&alpha, &beta);
                    let mut phase = C::one();
                    for _ in 0..d.order() {
                        phase = phase * minus_i.clone();
                    }
                    let entry = buckets.entry(d).or_insert_with(|| Matrix::zeros(sym.rows(), sym.cols()));
                    let val = entry.get(r, c).clone() + rest.scale(&phase);
                    entry.set(r, c, val);
                }
            }
        }
        let mut op = WeylOperator::zero(n, two_blocks, sym.rows(), sym.cols());
        for (d, m) in buckets {
            op.add_term(d, m);
        }
        op
    }
}

impl<C: Ring> WeylOperator<C> {
    /// `[{dx, dy, coeff}]` in term order; coefficients are row-major
    /// matrices of rendered polynomials.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(d, m)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("dx".into(), json!(d.alpha(self.n)));
                    if self.two_blocks {
                        obj.insert("dy".into(), json!(d.beta(self.n)));
                    }
                    obj.insert("coeff".into(), json!(m.render_rows()));
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    /// One line per term: `[coefficient matrix] * dx1^2*dy1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(d, m)| {
                let rows = m.render_rows().into_iter().map(|r| r.join(", ")).collect::<Vec<_>>().join("; ");
                let r = d.render(self.two_blocks);
                if r.is_empty() {
                    format!("[{rows}]")
                } else {
                    format!("[{rows}] * {r}")
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl<C: Ring> fmt::Debug for WeylOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational, Rational};

    type Op = WeylOperator<Rational>;
    type P = MultiPoly<Rational>;

    fn x() -> P {
        P::var(Var::x(1))
    }
    fn dx() -> Op {
        Op::partial(1, false, 1, Block::X, 1)
    }
    fn mul(p: P) -> Op {
        Op::multiplication(1, false, Matrix::scalar(1, p))
    }

    #[test]
    fn leibniz_examples() {
        let lhs = dx().compose(&mul(x())).unwrap();
        assert_eq!(lhs, mul(x()).compose(&dx()).unwrap().plus(&Op::identity(1, false, 1)));
        let euler = mul(x()).compose(&dx()).unwrap();
        let sq = euler.compose(&euler).unwrap();
        let x2d2 = mul(&x() * &x()).compose(&dx().compose(&dx()).unwrap()).unwrap();
        assert_eq!(sq, x2d2.plus(&euler));
    }

    #[test]
    fn apply_examples() {
        let lap = Op::laplacian(2, false, 1, Block::X);
        let f = Matrix::scalar(1, &x() * &x());
        assert_eq!(lap.apply(&f).unwrap(), Matrix::scalar(1, P::from_int(2)));
        let op = Op::multiplication(2, false, Matrix::scalar(1, x()))
            .compose(&Op::partial(2, false, 1, Block::X, 2))
            .unwrap();
        let g = Matrix::scalar(1, P::var(Var::x(2)));
        assert_eq!(op.apply(&g).unwrap(), Matrix::scalar(1, x()));
    }

    #[test]
    fn symbol_of_laplacian() {
        let lap = WeylOperator::<GaussianRational>::laplacian(2, false, 1, Block::X);
        let s = lap.symbol();
        let xi2 = |j| {
            let v = MultiPoly::<GaussianRational>::var(Var::xi(j));
            &v * &v
        };
        assert_eq!(*s.get(0, 0), -(&xi2(1) + &xi2(2)));
        assert_eq!(WeylOperator::from_symbol(2, false, &s), lap);
    }

    #[test]
    fn lift_then_restrict() {
        // d/dx (F(x, x)) = (dF/dx + dF/dy)(x, x).
        let lifted = Op::partial(1, false, 1, Block::X, 1).lift_diagonal().unwrap();
        assert_eq!(lifted.num_terms(), 2);
        assert_eq!(lifted.order(), 1);
    }

    #[test]
    fn difference_dependence() {
        let z = &P::var(Var::x(1)) - &P::var(Var::y(1));
        let op = Op::multiplication(1, true, Matrix::scalar(1, &z * &z));
        assert!(op.depends_on_difference_only());
        let op2 = Op::multiplication(1, true, Matrix::scalar(1, x()));
        assert!(!op2.depends_on_difference_only());
    }
}
