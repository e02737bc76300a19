use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{DerivIndex, Op, PolyMat};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, rational, Block, ExactRender, GaussianRational, ImaginaryUnit, Var};
use crate::Poly;

type G = GaussianRational;

/// An exponent `e` of `|xi|^e`: a polynomial (normally affine) in the
/// formal parameters.
pub type Exponent = Poly;

/// Finite sum `sum P_{a,b}(x, y, xi, zeta) |xi|^(e + 2a) |zeta|^(f + 2b)`
/// with matrix-valued polynomial coefficients and formal base exponents
/// `e`, `f`.
///
/// The `xi` variables pair with `x`, the `zeta` variables with `y`.  A
/// symbol in one variable simply has `f = 0` and only `b = 0` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct RieszSymbol {
    n: usize,
    rows: usize,
    cols: usize,
    base_xi: Exponent,
    base_zeta: Exponent,
    terms: BTreeMap<(i32, i32), PolyMat<G>>,
}

fn add_into(acc: &mut PolyMat<G>, m: &PolyMat<G>) {
    for i in 0..acc.rows() {
        for j in 0..acc.cols() {
            if m.get(i, j).is_zero() {
                continue;
            }
            let mut a = std::mem::take(acc.get_mut(i, j));
            a += m.get(i, j);
            acc.set(i, j, a);
        }
    }
}

fn is_zero_mat(m: &PolyMat<G>) -> bool {
    m.entries().all(|p| p.is_zero())
}

/// `|v|^2` in the cotangent block `xi` or `zeta`.
pub fn norm_squared(n: usize, block: Block) -> Poly {
    (1..=n).fold(Poly::zero(), |acc, j| {
        let v = Poly::var(Var::in_block(block, j));
        &acc + &(&v * &v)
    })
}

/// Integer `k` with `a - b = 2k`, if any.
fn even_offset(a: &Exponent, b: &Exponent) -> Result<i32> {
    let d = a - b;
    let bad = || Error::MixedParity(format!("{} vs {}", a.render(), b.render()));
    if !d.is_constant() {
        return Err(bad());
    }
    let c = d.constant_term();
    if !c.im.is_zero() || !c.re.is_integer() {
        return Err(bad());
    }
    let v: i64 = c.re.to_integer().try_into().map_err(|_| bad())?;
    if v % 2 != 0 {
        return Err(bad());
    }
    Ok((v / 2) as i32)
}

impl RieszSymbol {
    pub fn zero(n: usize, rows: usize, cols: usize, base_xi: Exponent, base_zeta: Exponent) -> Self {
        RieszSymbol { n, rows, cols, base_xi, base_zeta, terms: BTreeMap::new() }
    }

    /// `P |xi|^(base_xi) |zeta|^(base_zeta)`.
    pub fn single(n: usize, p: PolyMat<G>, base_xi: Exponent, base_zeta: Exponent) -> Self {
        let mut out = RieszSymbol::zero(n, p.rows(), p.cols(), base_xi, base_zeta);
        out.add_term(0, 0, p);
        out
    }

    /// `|xi|^e` times the identity of the given size.
    pub fn power(n: usize, size: usize, e: Exponent) -> Self {
        RieszSymbol::single(n, Matrix::identity(size), e, Poly::zero())
    }

    /// `|xi|^(s-1) rho(xi)`, given the matrix `rho(xi)` with linear entries.
    pub fn clifford_riesz(n: usize, rho_xi: PolyMat<G>, s: Exponent) -> Self {
        let e = &s - &Poly::one();
        RieszSymbol::single(n, rho_xi, e, Poly::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn base(&self) -> (&Exponent, &Exponent) {
        (&self.base_xi, &self.base_zeta)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &PolyMat<G>)> {
        self.terms.iter()
    }

    /// Coefficient of `|xi|^(e + 2a) |zeta|^(f + 2b)` as stored (not
    /// normalized).
    pub fn coeff(&self, a: i32, b: i32) -> PolyMat<G> {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn add_term(&mut self, a: i32, b: i32, p: PolyMat<G>) {
        assert_eq!(p.shape(), (self.rows, self.cols), "coefficient shape");
        if is_zero_mat(&p) {
            return;
        }
        match self.terms.get_mut(&(a, b)) {
            Some(acc) => {
                add_into(acc, &p);
                if is_zero_mat(acc) {
                    self.terms.remove(&(a, b));
                }
            }
            None => {
                self.terms.insert((a, b), p);
            }
        }
    }

    /// Same symbol written against new base exponents.
    pub fn rebase(&self, base_xi: &Exponent, base_zeta: &Exponent) -> Result<Self> {
        let da = even_offset(&self.base_xi, base_xi)?;
        let db = even_offset(&self.base_zeta, base_zeta)?;
        let mut out = RieszSymbol::zero(self.n, self.rows, self.cols, base_xi.clone(), base_zeta.clone());
        for ((a, b), p) in &self.terms {
            out.add_term(a + da, b + db, p.clone());
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() || self.n != other.n {
            return Err(Error::DimensionMismatch("Riesz symbols of different shapes".into()));
        }
        let mut out = self.clone();
        for ((a, b), p) in &other.rebase(&self.base_xi, &self.base_zeta)?.terms {
            out.add_term(*a, *b, p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&Poly::from_int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        self.map(|p| p.map(|e| e * c))
    }

    fn map(&self, f: impl Fn(&PolyMat<G>) -> PolyMat<G>) -> Self {
        let mut out = RieszSymbol::zero(self.n, self.rows, self.cols, self.base_xi.clone(), self.base_zeta.clone());
        for ((a, b), p) in &self.terms {
            let q = f(p);
            out.rows = q.rows();
            out.cols = q.cols();
            out.add_term(*a, *b, q);
        }
        out
    }

    /// Left multiplication by a matrix-valued polynomial.
    pub fn left_mul(&self, m: &PolyMat<G>) -> Result<Self> {
        if m.cols() != self.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times symbol with {} rows", m.rows(), m.cols(), self.rows)));
        }
        Ok(self.map(|p| m.try_mul(p).expect("checked")))
    }

    /// Right multiplication by a matrix-valued polynomial.
    pub fn right_mul(&self, m: &PolyMat<G>) -> Result<Self> {
        if m.rows() != self.cols {
            return Err(Error::DimensionMismatch(format!("symbol with {} columns times {}x{}", self.cols, m.rows(), m.cols())));
        }
        Ok(self.map(|p| p.try_mul(m).expect("checked")))
    }

    /// Product of two symbols, one in `xi` and one in `zeta` (or any two
    /// symbols; exponents add).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = RieszSymbol::zero(
            self.n,
            self.rows,
            other.cols,
            &self.base_xi + &other.base_xi,
            &self.base_zeta + &other.base_zeta,
        );
        for ((a, b), p) in &self.terms {
            for ((c, d), q) in &other.terms {
                out.add_term(a + c, b + d, p.try_mul(q)?);
            }
        }
        Ok(out)
    }

    /// Derivative in a cotangent variable `xi_j` or `zeta_j`, using
    /// `d_j |xi|^c = c xi_j |xi|^(c - 2)`.
    pub fn diff(&self, v: Var) -> Result<Self> {
        let (block_base, on_xi) = match v.block() {
            Block::Xi => (&self.base_xi, true),
            Block::Zeta => (&self.base_zeta, false),
            _ => return Err(Error::UnknownIndeterminate(format!("{v} is not a cotangent variable"))),
        };
        let vj = Poly::var(v);
        let mut out = RieszSymbol::zero(self.n, self.rows, self.cols, self.base_xi.clone(), self.base_zeta.clone());
        for ((a, b), p) in &self.terms {
            out.add_term(*a, *b, p.map(|e| e.diff(v)));
            let k = if on_xi { *a } else { *b };
            let expo = block_base + &Poly::from_int(2 * k as i64);
            let factor = &expo * &vj;
            let (na, nb) = if on_xi { (a - 1, *b) } else { (*a, b - 1) };
            out.add_term(na, nb, p.map(|e| e * &factor));
        }
        Ok(out)
    }

    /// `sum_j d^2/dv_j^2` over the `xi` or `zeta` block.
    pub fn laplacian(&self, block: Block) -> Result<Self> {
        let mut acc = RieszSymbol::zero(self.n, self.rows, self.cols, self.base_xi.clone(), self.base_zeta.clone());
        for j in 1..=self.n {
            let v = Var::in_block(block, j);
            acc = acc.try_add(&self.diff(v)?.diff(v)?)?;
        }
        Ok(acc)
    }

    /// Canonical form `Q |xi|^(e + 2a0) |zeta|^(f + 2b0)` with `a0, b0` the
    /// smallest offsets present: higher powers are expanded as polynomials.
    pub fn normal_form(&self) -> (i32, i32, PolyMat<G>) {
        let a0 = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b0 = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let nx = norm_squared(self.n, Block::Xi);
        let nz = norm_squared(self.n, Block::Zeta);
        let mut acc = Matrix::zeros(self.rows, self.cols);
        for ((a, b), p) in &self.terms {
            let f = &nx.pow((a - a0) as u32) * &nz.pow((b - b0) as u32);
            add_into(&mut acc, &p.map(|e| e * &f));
        }
        (a0, b0, acc)
    }

    /// Whether the symbol vanishes identically (as a function of generic
    /// `s, t`).
    pub fn is_zero(&self) -> bool {
        is_zero_mat(&self.normal_form().2)
    }

    /// Exact equality in the symbol ring.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.try_sub(other)?.is_zero())
    }

    /// Substitutes polynomials for variables in coefficients and exponents.
    pub fn substitute(&self, v: Var, q: &Poly) -> Self {
        let mut out = RieszSymbol::zero(
            self.n,
            self.rows,
            self.cols,
            self.base_xi.substitute(v, q),
            self.base_zeta.substitute(v, q),
        );
        for ((a, b), p) in &self.terms {
            out.add_term(*a, *b, p.map(|e| e.substitute(v, q)));
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = Vec::new();
        for ((a, b), p) in &self.terms {
            let rows = p.render_rows().into_iter().map(|r| r.join(", ")).collect::<Vec<_>>().join("; ");
            let ex = &self.base_xi + &Poly::from_int(2 * *a as i64);
            let ez = &self.base_zeta + &Poly::from_int(2 * *b as i64);
            out.push(format!("[{rows}] |xi|^({}) |zeta|^({})", ex.render(), ez.render()));
        }
        out.join("\n")
    }
}

/// Symbol of `D o K` for a differential operator `D` and a convolution `K`:
/// `symb(D)(x, xi) symb(K)(xi)`.
pub fn symb_conv_then_diff(d: &Op, k: &RieszSymbol) -> Result<RieszSymbol> {
    k.left_mul(&d.symbol())
}

/// Symbol of `K o p` for a convolution `K` followed by multiplication by
/// the scalar polynomial `p(x, y)` (given as a multiple of the identity):
/// `sum_d (1/d!) d^d p (-i d_xi)^d symb(K)`, where derivatives in `x` pair
/// with `xi` and derivatives in `y` pair with `zeta`.
pub fn symb_conv_then_mult(k: &RieszSymbol, p: &PolyMat<G>) -> Result<RieszSymbol> {
    let scalar = scalar_part(p)?;
    let n = k.n();
    let minus_i = -G::imag_unit();
    // Enumerate the nonzero derivatives of p by breadth-first search.
    let mut frontier = vec![(DerivIndex::zero(), scalar.clone())];
    let mut seen = BTreeMap::new();
    seen.insert(DerivIndex::zero(), scalar);
    while let Some((d, q)) = frontier.pop() {
        for block in [Block::X, Block::Y] {
            for j in 1..=n {
                let v = Var::in_block(block, j);
                let dq = q.diff(v);
                if dq.is_zero() {
                    continue;
                }
                let e = d.add(&DerivIndex::unit(block, j));
                if seen.contains_key(&e) {
                    continue;
                }
                seen.insert(e, dq.clone());
                frontier.push((e, dq));
            }
        }
    }
    let mut out = RieszSymbol::zero(n, k.rows, k.cols, k.base_xi.clone(), k.base_zeta.clone());
    for (d, dp) in seen {
        let mut dk = k.clone();
        for block in [Block::X, Block::Y] {
            for j in 1..=n {
                for _ in 0..d.get(block, j) {
                    let v = Var::in_block(block, j).dual().expect("spatial");
                    dk = dk.diff(v)?;
                }
            }
        }
        let mut phase = G::one();
        for _ in 0..d.order() {
            phase = phase * minus_i.clone();
        }
        let c = phase * G::new(rational(1, d.factorial()), int(0));
        let factor = dp.scale(&c);
        out = out.try_add(&dk.scale(&factor))?;
    }
    Ok(out)
}

/// The scalar `c` when `p = c * Id`.
fn scalar_part(p: &PolyMat<G>) -> Result<Poly> {
    if p.rows() != p.cols() {
        return Err(Error::Unsupported("multiplier must be square".into()));
    }
    let c = p.get(0, 0).clone();
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            let expect = if i == j { c.clone() } else { Poly::zero() };
            if *p.get(i, j) != expect {
                return Err(Error::Unsupported("the composition rule needs a scalar-valued multiplier".into()));
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::CliffordModule;
    use crate::weyl::{dirac, rho_of, Factor};

    fn s() -> Poly {
        Poly::var(Var::S)
    }

    fn xi(n: usize) -> Vec<Poly> {
        (1..=n).map(|j| Poly::var(Var::xi(j))).collect()
    }

    #[test]
    fn power_rule() {
        let r = RieszSymbol::power(2, 1, s());
        let d = r.diff(Var::xi(1)).unwrap();
        let expect = RieszSymbol::single(2, Matrix::scalar(1, &s() * &Poly::var(Var::xi(1))), &s() - &Poly::from_int(2), Poly::zero());
        assert!(d.equals(&expect).unwrap());
    }

    #[test]
    fn laplacian_of_clifford_riesz() {
        for n in 1..=4 {
            let m = CliffordModule::new(n).unwrap();
            let rho = rho_of(&m, Factor::Alone, &xi(n));
            let r = RieszSymbol::clifford_riesz(n, rho.clone(), s());
            let lap = r.laplacian(Block::Xi).unwrap();
            let c = &(&s() - &Poly::one()) * &(&s() + &Poly::from_int(n as i64 - 1));
            let expect = RieszSymbol::clifford_riesz(n, rho, &s() - &Poly::from_int(2)).scale(&c);
            assert!(lap.equals(&expect).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn mixed_parity_is_rejected() {
        let a = RieszSymbol::power(1, 1, s());
        let b = RieszSymbol::power(1, 1, &s() + &Poly::one());
        assert!(matches!(a.try_add(&b), Err(Error::MixedParity(_))));
    }

    #[test]
    fn composition_rules_on_simple_cases() {
        let n = 2;
        let k = RieszSymbol::power(n, 1, s());
        let one = Matrix::scalar(1, Poly::one());
        assert!(symb_conv_then_mult(&k, &one).unwrap().equals(&k).unwrap());
        let x1 = Matrix::scalar(1, Poly::var(Var::x(1)));
        let got = symb_conv_then_mult(&k, &x1).unwrap();
        let minus_i = Poly::constant(-G::imag_unit());
        let expect = k.scale(&Poly::var(Var::x(1))).try_add(&k.diff(Var::xi(1)).unwrap().scale(&minus_i)).unwrap();
        assert!(got.equals(&expect).unwrap());
        let m = CliffordModule::new(n).unwrap();
        let two = Matrix::from_fn(2, 2, |i, j| if i == j { Poly::one() } else { Poly::zero() });
        let bad = two.map(|e| e * &Poly::var(Var::x(1)));
        let mut bad = bad;
        bad.set(0, 1, Poly::one());
        let kk = RieszSymbol::power(n, 2, s());
        assert!(matches!(symb_conv_then_mult(&kk, &bad), Err(Error::Unsupported(_))));
        let d = dirac(&m, Factor::Alone, Block::X, false);
        let got = symb_conv_then_diff(&d, &kk).unwrap();
        assert!(got.equals(&kk.left_mul(&d.symbol()).unwrap()).unwrap());
    }
}
