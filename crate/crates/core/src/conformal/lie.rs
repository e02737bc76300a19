use num_traits::One;

use super::{h_element, half, null_part};
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, Block, FromRational, Rational, Ring, Var};
use crate::spin::{CliffordModule, MRep};
use crate::weyl::{embed_op, DerivIndex, Factor, Op};
use crate::Poly;

/// `Y = sum nbar_j e_j(e0 + e_{n+1}) + Y_m + a H + sum n_j e_j(e0 - e_{n+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivectorDecomp<T> {
    pub nbar: Vec<T>,
    /// Euclidean bivector in `Cl(n)`.
    pub m: Multivector<T>,
    pub a: T,
    pub n: Vec<T>,
}

impl<T: Ring + FromRational> BivectorDecomp<T> {
    pub fn recombine(&self) -> Result<Multivector<T>> {
        let n = self.nbar.len();
        let two = int::<T>(2);
        let scaled = |v: &[T]| v.iter().map(|c| c.clone() * two.clone()).collect::<Vec<_>>();
        let acc = &null_part(&scaled(&self.nbar), 1) + &null_part(&scaled(&self.n), -1);
        let acc = &acc + &h_element(n).scale(&self.a);
        Ok(&acc + &self.m.euclidean_to_lorentzian()?)
    }
}

fn lorentzian_n(sig: Signature) -> Result<usize> {
    sig.dim()
        .checked_sub(2)
        .filter(|n| sig == Signature::lorentzian(*n))
        .ok_or_else(|| Error::SignatureMismatch(format!("{sig:?}"), "lorentzian".into()))
}

/// Splits a bivector of `Cl(1, n+1)` along `nbar + m + a + n`.
pub fn decompose_bivector<T: Ring + FromRational>(y: &Multivector<T>) -> Result<BivectorDecomp<T>> {
    let sig = y.signature();
    let n = lorentzian_n(sig)?;
    if let Some((b, _)) = y.terms().find(|(b, _)| b.count_ones() != 2) {
        return Err(Error::WrongGrade { expected: 2, found: b.count_ones() as usize });
    }
    let mut nbar = Vec::with_capacity(n);
    let mut nn = Vec::with_capacity(n);
    for j in 1..=n {
        let a = -y.coeff(sig.blade(&[0, j]));
        let b = y.coeff(sig.blade(&[j, n + 1]));
        nbar.push((a.clone() + b.clone()) * half());
        nn.push((a - b) * half());
    }
    let outer = 1 | 1 << (n + 1);
    let m = Multivector::from_terms(
        Signature::euclidean(n),
        y.terms().filter(|(b, _)| b & outer == 0).map(|(b, c)| (b >> 1, c.clone())),
    );
    Ok(BivectorDecomp { nbar, m, a: y.coeff(sig.blade(&[0, n + 1])), n: nn })
}

/// Named basis of the Lie algebra: `nbar_j = e_j(e0 + e_{n+1})/2`,
/// `e_i e_j`, `H = e0 e_{n+1}` and `n_j = e_j(e0 - e_{n+1})/2`.
pub fn bivector_basis(n: usize) -> Vec<(String, Multivector<Rational>)> {
    let mut out = Vec::new();
    let unit = |j: usize| {
        let mut v = vec![Rational::from_integer(0.into()); n];
        v[j - 1] = Rational::one();
        v
    };
    for j in 1..=n {
        out.push((format!("nbar{j}"), null_part(&unit(j), 1)));
    }
    let sig = Signature::lorentzian(n);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((format!("e{i}e{j}"), Multivector::product_of(sig, &[i, j])));
        }
    }
    out.push(("H".into(), h_element(n)));
    for j in 1..=n {
        out.push((format!("n{j}"), null_part(&unit(j), -1)));
    }
    out
}

/// `d pi_lambda(X)` on functions of the given variable block with values in
/// the target of `rep`:
/// `-2 sum b_j d_j + 2 lambda h + d rho(Y_m)` where
/// `nbar_{-x} X nbar_x = sum b_j e_j(e0 + e_{n+1}) + Y_m + h H + (n part)`.
pub fn infinitesimal_action(
    x: &Multivector<Rational>,
    lambda: &Poly,
    rep: &MRep,
    block: Block,
    two_blocks: bool,
) -> Result<Op> {
    let n = lorentzian_n(x.signature())?;
    if rep.n() != n {
        return Err(Error::DimensionMismatch(format!("rep for n = {} with X for n = {n}", rep.n())));
    }
    if !x.is_grade(2) {
        let found = x.terms().map(|(b, _)| b.count_ones() as usize).find(|g| *g != 2).unwrap_or(0);
        return Err(Error::WrongGrade { expected: 2, found });
    }
    let sig = x.signature();
    let xs: Vec<Poly> = (1..=n).map(|j| Poly::var(Var::in_block(block, j))).collect();
    let minus: Vec<Poly> = xs.iter().map(|p| -p.clone()).collect();
    let one = Multivector::<Poly>::one(sig);
    let left = &one + &null_part(&minus, 1);
    let right = &one + &null_part(&xs, 1);
    let xp = x.map(|c| <Poly as FromRational>::from_rational(c));
    let y = &(&left * &xp) * &right;
    let d = decompose_bivector(&y)?;
    let size = rep.dim();
    let mut op = Op::zero(n, two_blocks, size, size);
    for (j, b) in d.nbar.iter().enumerate() {
        let c = b * &Poly::from_int(-2);
        op.add_term(DerivIndex::unit(block, j + 1), Matrix::scalar(size, c));
    }
    let weight = &(lambda * &d.a) * &Poly::from_int(2);
    let zero = &Matrix::scalar(size, weight) + &rep.action(&d.m, |c| Poly::constant(c.clone()))?;
    op.add_term(DerivIndex::zero(), zero);
    Ok(op)
}

/// `d pi_lambda(X) (x) 1 + 1 (x) d pi'_mu(X)` on `S (x) S'`-valued functions
/// of `(x, y)`.
pub fn infinitesimal_action_tensor(x: &Multivector<Rational>, lambda: &Poly, mu: &Poly, module: &CliffordModule) -> Result<Op> {
    let left = infinitesimal_action(x, lambda, &MRep::Spinor(module.clone()), Block::X, true)?;
    let right = infinitesimal_action(x, mu, &MRep::Dual(module.clone()), Block::Y, true)?;
    embed_op(module, Factor::Left, &left).try_add(&embed_op(module, Factor::Right, &right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn lambda() -> Poly {
        Poly::var(Var::LAMBDA)
    }

    #[test]
    fn decomposition_examples() {
        for n in 1..=4 {
            let sig = Signature::lorentzian(n);
            let h = h_element::<Rational>(n);
            let d = decompose_bivector(&h).unwrap();
            assert_eq!(d.a, rational(1, 1));
            assert!(d.m.is_zero() && d.nbar.iter().chain(&d.n).all(|c| *c == rational(0, 1)));
            let e10 = Multivector::<Rational>::product_of(sig, &[1, 0]);
            let d = decompose_bivector(&e10).unwrap();
            assert_eq!(d.nbar[0], rational(1, 2));
            assert_eq!(d.n[0], rational(1, 2));
            assert_eq!(d.recombine().unwrap(), e10);
            for (_, b) in bivector_basis(n) {
                assert_eq!(decompose_bivector(&b).unwrap().recombine().unwrap(), b);
            }
        }
        let sig = Signature::lorentzian(2);
        let d = decompose_bivector(&Multivector::<Rational>::product_of(sig, &[1, 2])).unwrap();
        assert_eq!(d.m, Multivector::product_of(Signature::euclidean(2), &[1, 2]));
        assert!(decompose_bivector(&Multivector::<Rational>::e(sig, 1)).is_err());
    }

    #[test]
    fn anchor_generators() {
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            let rep = MRep::Spinor(m.clone());
            let basis = bivector_basis(n);
            let size = m.dim();
            for j in 1..=n {
                let x = &basis[j - 1].1;
                let got = infinitesimal_action(x, &lambda(), &rep, Block::X, false).unwrap();
                let expect = Op::partial(n, false, size, Block::X, j).neg();
                assert_eq!(got, expect);
            }
            let h = &basis.iter().find(|(name, _)| name == "H").unwrap().1;
            let got = infinitesimal_action(h, &lambda(), &rep, Block::X, false).unwrap();
            let mut expect = Op::multiplication(n, false, Matrix::scalar(size, &lambda() * &Poly::from_int(2)));
            for j in 1..=n {
                let c = &Poly::var(Var::x(j)) * &Poly::from_int(2);
                expect.add_term(DerivIndex::unit(Block::X, j), Matrix::scalar(size, c));
            }
            assert_eq!(got, expect);
        }
        let n1 = &bivector_basis(1)[2].1;
        let got = infinitesimal_action(n1, &lambda(), &MRep::KForm { n: 1, k: 0 }, Block::X, false).unwrap();
        let x = Poly::var(Var::x(1));
        let mut expect = Op::multiplication(1, false, Matrix::scalar(1, &(&x * &lambda()) * &Poly::from_int(2)));
        expect.add_term(DerivIndex::unit(Block::X, 1), Matrix::scalar(1, &x * &x));
        assert_eq!(got, expect);
    }
}
