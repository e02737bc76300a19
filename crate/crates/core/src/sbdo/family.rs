//! Iterated source operators `E^(m)`, the symmetry breaking family
//! `B^(m)_{k;lambda,mu}`, its recurrence, and the closed forms for `k = 0`,
//! `m = 1`.

use num_traits::Zero;

use super::source::build_e;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Block, GaussianRational, RationalFunction, Var};
use crate::spin::CliffordModule;
use crate::weyl::{dirac, poly_matrix, DerivIndex, Factor, Op, PolyMat};
use crate::Poly;

fn p(v: i64) -> Poly {
    Poly::from_int(v)
}

fn shift(v: &Poly, by: i64) -> Poly {
    v + &p(by)
}

/// `E^(m)_{lambda,mu} = E_{lambda+m-1,mu+m-1} o ... o E_{lambda,mu}`.
pub fn build_e_power(module: &CliffordModule, lambda: &Poly, mu: &Poly, m: usize) -> Result<Op> {
    if m == 0 {
        return Err(Error::OutOfRange("m must be at least 1".into()));
    }
    let mut acc = build_e(module, lambda, mu)?;
    for i in 1..m as i64 {
        acc = build_e(module, &shift(lambda, i), &shift(mu, i))?.compose(&acc)?;
    }
    Ok(acc)
}

/// `F -> Psi^(k)(F(x, x))` applied after an operator on `(x, y)`: restricts
/// the coefficients to the diagonal, requires them to be constant there and
/// maps the values to `k`-forms.
pub fn psi_restrict(module: &CliffordModule, k: usize, op: &Op) -> Result<Op> {
    let restricted = op.restrict_diagonal();
    if !restricted.is_constant_coefficient() {
        return Err(Error::Invariant("diagonal restriction is not constant".into()));
    }
    restricted.left_mul(&poly_matrix(&module.psi_matrix(k)?))
}

/// `B^(m)_{k;lambda,mu}`: a constant-coefficient operator from
/// `S (x) S'`-valued functions of `(x, y)` to `k`-forms, evaluated on the
/// diagonal.
pub fn build_b(module: &CliffordModule, k: usize, lambda: &Poly, mu: &Poly, m: usize) -> Result<Op> {
    if k > module.n() {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {}", module.n())));
    }
    psi_restrict(module, k, &build_e_power(module, lambda, mu, m)?)
}

/// All `B^(m)_{k;lambda,mu}` for `k = 0..=n`, sharing one `E^(m)`.
pub fn build_b_all(module: &CliffordModule, lambda: &Poly, mu: &Poly, m: usize) -> Result<Vec<Op>> {
    let e = build_e_power(module, lambda, mu, m)?;
    (0..=module.n()).map(|k| psi_restrict(module, k, &e)).collect()
}

/// `B^(m-1)_{k;lambda+shift,mu+shift} o E_{lambda,mu}`, restricted to the
/// diagonal.  With `shift = 1` this is the right-hand side of the
/// recurrence.
pub fn recurrence_rhs(module: &CliffordModule, k: usize, lambda: &Poly, mu: &Poly, m: usize, shift_by: i64) -> Result<Op> {
    if m < 2 {
        return Err(Error::OutOfRange("the recurrence needs m >= 2".into()));
    }
    let prev = build_b(module, k, &shift(lambda, shift_by), &shift(mu, shift_by), m - 1)?;
    Ok(prev.compose(&build_e(module, lambda, mu)?)?.restrict_diagonal())
}

/// Whether `B^(m)` is homogeneous of total order `2m` with constant
/// coefficients.
pub fn is_homogeneous(b: &Op, m: usize) -> bool {
    b.is_constant_coefficient() && b.terms().all(|(d, _)| d.order() == 2 * m)
}

/// The closed form of `B^(1)_{0;lambda,mu}` as printed, with the stray `+`
/// before the sum read as a product:
/// `(2mu-n+1)(2mu+1)(Lap v, w') + (2lambda-n+1)(2lambda+1)(v, Lap w')
///  - 2(2lambda-n+1)(2mu-n+1) sum (d_j v, d_j w') - 2(2lambda+2mu-n+2)(D v, D' w')`.
pub fn printed_b0(module: &CliffordModule, lambda: &Poly, mu: &Poly, literal_plus: bool) -> Result<Op> {
    let n = module.n();
    let nn = n as i64;
    let size = module.tensor_dim();
    let a = &(lambda * &p(2)) - &p(nn - 1);
    let b = &(mu * &p(2)) - &p(nn - 1);
    let lx = Op::laplacian(n, true, size, Block::X);
    let ly = Op::laplacian(n, true, size, Block::Y);
    let mut grad = Op::zero(n, true, size, size);
    for j in 1..=n {
        grad = grad.try_add(&Op::partial(n, true, size, Block::X, j).compose(&Op::partial(n, true, size, Block::Y, j))?)?;
    }
    let dd = dirac(module, Factor::Left, Block::X, true).compose(&dirac(module, Factor::Right, Block::Y, true))?;
    let mut op = lx.scale(&(&b * &shift(&(mu * &p(2)), 1)));
    op = op.try_add(&ly.scale(&(&a * &shift(&(lambda * &p(2)), 1))))?;
    let pair = &(&a * &b) * &p(-2);
    if literal_plus {
        op = op.try_add(&Op::identity(n, true, size).scale(&pair))?;
        op = op.try_add(&grad)?;
    } else {
        op = op.try_add(&grad.scale(&pair))?;
    }
    let c = &(&(&(lambda * &p(2)) + &(mu * &p(2))) - &p(nn - 2)) * &p(-2);
    op = op.try_add(&dd.scale(&c))?;
    op.left_mul(&poly_matrix(&module.psi_matrix(0)?))
}

/// The three-term bidifferential operator of the one-dimensional case:
/// `2mu(2mu+1) d_x^2 + 2lambda(2lambda+1) d_y^2 - 2(2lambda+1)(2mu+1) d_x d_y`.
pub fn rankin_cohen(lambda: &Poly, mu: &Poly) -> Op {
    let two_l1 = shift(&(lambda * &p(2)), 1);
    let two_m1 = shift(&(mu * &p(2)), 1);
    let one = |c: Poly| -> PolyMat<GaussianRational> { Matrix::scalar(1, c) };
    let mut op = Op::zero(1, true, 1, 1);
    op.add_term(DerivIndex::new(&[2], &[0]), one(&(mu * &p(2)) * &two_m1));
    op.add_term(DerivIndex::new(&[0], &[2]), one(&(lambda * &p(2)) * &two_l1));
    op.add_term(DerivIndex::new(&[1], &[1]), one(&(&two_l1 * &two_m1) * &p(-2)));
    op
}

/// The constant `c` with `a = c b`, if one exists (as a ratio of
/// polynomials in the parameters).
pub fn proportionality(a: &Op, b: &Op) -> Option<RationalFunction<GaussianRational>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let (d, m) = b.terms().next()?;
    let (i, j) = (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).find(|(i, j)| !m.get(*i, *j).is_zero())?;
    let num = a.coeff(d).get(i, j).clone();
    let den = m.get(i, j).clone();
    if num.is_zero() {
        return None;
    }
    // a * den == num * b, term by term.
    let lhs = a.scale(&den);
    let rhs = b.scale(&num);
    (lhs == rhs).then(|| RationalFunction::new(num, den).expect("nonzero").reduced())
}

/// The two parameters used in formal checks.
pub fn formal_parameters() -> (Poly, Poly) {
    (Poly::var(Var::LAMBDA), Poly::var(Var::MU))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_member_reproduces_the_printed_closed_form() {
        let (l, u) = formal_parameters();
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            let b = build_b(&m, 0, &l, &u, 1).unwrap();
            assert_eq!(b, printed_b0(&m, &l, &u, false).unwrap(), "n = {n}");
            assert_ne!(b, printed_b0(&m, &l, &u, true).unwrap());
            assert!(is_homogeneous(&b, 1));
        }
    }

    #[test]
    fn one_dimensional_case_is_rankin_cohen() {
        let (l, u) = formal_parameters();
        let m = CliffordModule::new(1).unwrap();
        let b = build_b(&m, 0, &l, &u, 1).unwrap();
        let c = proportionality(&b, &rankin_cohen(&l, &u)).expect("proportional");
        assert!(!c.numer().is_zero());
    }

    #[test]
    fn k_out_of_range() {
        let (l, u) = formal_parameters();
        let m = CliffordModule::new(2).unwrap();
        assert!(matches!(build_b(&m, 3, &l, &u, 1), Err(Error::OutOfRange(_))));
    }
}
