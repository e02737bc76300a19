//! The fourth-order operator `F_{s,t}`, its symbol `f_{s,t}`, the source
//! operator `E_{lambda,mu}` and the multiplication operator `M`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{Block, GaussianRational, ImaginaryUnit, Var};
use crate::spin::{CliffordModule, Side};
use crate::weyl::{difference, dirac, distance_squared, embed, poly_matrix, rho_of, Factor, Op, PolyMat};
use crate::Poly;

/// Number of terms in the shared layout of `F_{s,t}` and `E_{lambda,mu}`.
pub const SOURCE_TERMS: usize = 11;

/// Human-readable names of the layout terms, in order.
pub const SOURCE_TERM_NAMES: [&str; SOURCE_TERMS] = [
    "|x-y|^2 Lap_x Lap_y",
    "sum (x_j-y_j) d/dx_j Lap_y",
    "sum (y_j-x_j) Lap_x d/dy_j",
    "rho(x-y) D_x Lap_y",
    "Lap_x rho'(y-x) D'_y",
    "Lap_x",
    "Lap_y",
    "sum d/dx_j d/dy_j",
    "sum d/dx_j rho'(e_j) D'_y",
    "sum rho(e_j) D_x d/dy_j",
    "sum rho(e_j) D_x rho'(e_j) D'_y",
];

fn p(v: i64) -> Poly {
    Poly::from_int(v)
}

fn s() -> Poly {
    Poly::var(Var::S)
}

fn t() -> Poly {
    Poly::var(Var::T)
}

fn scalar(size: usize, c: Poly) -> PolyMat<GaussianRational> {
    Matrix::scalar(size, c)
}

fn constant_matrix(module: &CliffordModule, factor: Factor, side: Side, j: usize) -> PolyMat<GaussianRational> {
    poly_matrix(&embed(module, factor, &module.generator(side, j)))
}

/// The eleven layout operators with unit coefficients, on `S (x) S'`-valued
/// functions of `(x, y)`.
pub fn source_terms(module: &CliffordModule) -> Result<Vec<Op>> {
    let n = module.n();
    let size = module.tensor_dim();
    let lx = Op::laplacian(n, true, size, Block::X);
    let ly = Op::laplacian(n, true, size, Block::Y);
    let px = |j| Op::partial(n, true, size, Block::X, j);
    let py = |j| Op::partial(n, true, size, Block::Y, j);
    let dx = dirac(module, Factor::Left, Block::X, true);
    let dy = dirac(module, Factor::Right, Block::Y, true);
    let x_minus_y = difference(n, true);
    let y_minus_x = difference(n, false);
    let sum = |f: &dyn Fn(usize) -> Result<Op>| -> Result<Op> {
        (1..=n).try_fold(Op::zero(n, true, size, size), |acc, j| acc.try_add(&f(j)?))
    };

    let t1 = lx.compose(&ly)?.left_mul(&scalar(size, distance_squared(n)))?;
    let t2 = sum(&|j| px(j).compose(&ly)?.left_mul(&scalar(size, x_minus_y[j - 1].clone())))?;
    let t3 = sum(&|j| lx.compose(&py(j))?.left_mul(&scalar(size, y_minus_x[j - 1].clone())))?;
    let t4 = dx.compose(&ly)?.left_mul(&rho_of(module, Factor::Left, &x_minus_y))?;
    let t5 = lx.compose(&dy)?.left_mul(&rho_of(module, Factor::Right, &y_minus_x))?;
    let t8 = sum(&|j| px(j).compose(&py(j)))?;
    let t9 = sum(&|j| px(j).compose(&dy.left_mul(&constant_matrix(module, Factor::Right, Side::Dual, j))?))?;
    let t10 = sum(&|j| dx.left_mul(&constant_matrix(module, Factor::Left, Side::Spinor, j))?.compose(&py(j)))?;
    let t11 = sum(&|j| {
        let a = dx.left_mul(&constant_matrix(module, Factor::Left, Side::Spinor, j))?;
        let b = dy.left_mul(&constant_matrix(module, Factor::Right, Side::Dual, j))?;
        a.compose(&b)
    })?;
    Ok(vec![t1, t2, t3, t4, t5, lx, ly, t8, t9, t10, t11])
}

/// Coefficients of `F_{s,t}` in the layout of [`source_terms`].
pub fn f_coefficients(n: usize) -> [Poly; SOURCE_TERMS] {
    let a = &s() + &p(n as i64 + 1);
    let b = &t() + &p(n as i64 + 1);
    let two = p(-2);
    [
        Poly::one(),
        &two * &a,
        &two * &b,
        p(-2),
        p(-2),
        &(&t() + &p(1)) * &b,
        &(&s() + &p(1)) * &a,
        &(&two * &a) * &b,
        &two * &a,
        &two * &b,
        p(-2),
    ]
}

/// Coefficients of the closed form of `E_{lambda,mu}` as printed, in the
/// layout of [`source_terms`].  The printed fifth term reads
/// `-2 Lap_x rho'(x-y) D'_y`, which is `+2` times the layout term.
pub fn printed_e_coefficients(n: usize, lambda: &Poly, mu: &Poly) -> [Poly; SOURCE_TERMS] {
    let nn = n as i64;
    let a = &(lambda * &p(2)) - &p(nn - 1);
    let b = &(mu * &p(2)) - &p(nn - 1);
    [
        Poly::one(),
        &a * &p(2),
        &b * &p(2),
        p(-2),
        p(2),
        &b * &(&(mu * &p(2)) + &p(1)),
        &a * &(&(lambda * &p(2)) + &p(1)),
        &(&a * &b) * &p(-2),
        &a * &p(2),
        &b * &p(2),
        p(-2),
    ]
}

/// `sum_i c_i T_i`.
pub fn combine(terms: &[Op], coeffs: &[Poly]) -> Result<Op> {
    let first = &terms[0];
    let mut acc = Op::zero(first.n(), true, first.rows(), first.cols());
    for (op, c) in terms.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.try_add(&op.scale(c))?;
        }
    }
    Ok(acc)
}

/// `F_{s,t}` with formal `s`, `t`.
pub fn build_f(module: &CliffordModule) -> Result<Op> {
    combine(&source_terms(module)?, &f_coefficients(module.n()))
}

/// The substitution `s = -2 lambda - 2`, `t = -2 mu - 2`.
pub fn lambda_mu_substitution(lambda: &Poly, mu: &Poly) -> HashMap<Var, Poly> {
    HashMap::from([
        (Var::S, &(lambda * &p(-2)) - &p(2)),
        (Var::T, &(mu * &p(-2)) - &p(2)),
    ])
}

/// `E_{lambda,mu} = F_{-2 lambda - 2, -2 mu - 2}`.
pub fn build_e(module: &CliffordModule, lambda: &Poly, mu: &Poly) -> Result<Op> {
    let subs = lambda_mu_substitution(lambda, mu);
    let coeffs: Vec<Poly> = f_coefficients(module.n()).iter().map(|c| c.substitute_all(&subs)).collect();
    combine(&source_terms(module)?, &coeffs)
}

/// The closed form of `E_{lambda,mu}` exactly as printed.
pub fn build_printed_e(module: &CliffordModule, lambda: &Poly, mu: &Poly) -> Result<Op> {
    combine(&source_terms(module)?, &printed_e_coefficients(module.n(), lambda, mu))
}

/// One layout term on which the substituted and printed forms disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct TermDiscrepancy {
    /// 1-based position in the layout.
    pub index: usize,
    pub name: &'static str,
    pub substituted: Poly,
    pub printed: Poly,
}

/// Term-by-term comparison of `F_{-2 lambda - 2, -2 mu - 2}` against the
/// printed closed form of `E_{lambda,mu}`.
pub fn e_discrepancies(n: usize, lambda: &Poly, mu: &Poly) -> Vec<TermDiscrepancy> {
    let subs = lambda_mu_substitution(lambda, mu);
    let printed = printed_e_coefficients(n, lambda, mu);
    f_coefficients(n)
        .iter()
        .zip(printed)
        .enumerate()
        .filter_map(|(i, (c, pr))| {
            let sub = c.substitute_all(&subs);
            (sub != pr).then_some(TermDiscrepancy { index: i + 1, name: SOURCE_TERM_NAMES[i], substituted: sub, printed: pr })
        })
        .collect()
}

/// `M = |x - y|^2 Id`.
pub fn build_m(module: &CliffordModule) -> Op {
    let n = module.n();
    Op::multiplication(n, true, scalar(module.tensor_dim(), distance_squared(n)))
}

/// The polynomial `f_{s,t}(x, y, xi, zeta)` written out term by term.
pub fn f_symbol(module: &CliffordModule) -> PolyMat<GaussianRational> {
    let n = module.n();
    let size = module.tensor_dim();
    let nn = n as i64;
    let a = &s() + &p(nn + 1);
    let b = &t() + &p(nn + 1);
    let i2 = Poly::constant(GaussianRational::imag_unit() * crate::scalar::int::<GaussianRational>(2));
    let xi: Vec<Poly> = (1..=n).map(|j| Poly::var(Var::xi(j))).collect();
    let zeta: Vec<Poly> = (1..=n).map(|j| Poly::var(Var::zeta(j))).collect();
    let sq = |v: &[Poly]| v.iter().fold(Poly::zero(), |acc, c| &acc + &(c * c));
    let (xi2, zeta2) = (sq(&xi), sq(&zeta));
    let x_minus_y = difference(n, true);
    let y_minus_x = difference(n, false);
    let rho_xi = rho_of(module, Factor::Left, &xi);
    let rho_zeta = rho_of(module, Factor::Right, &zeta);
    let el = |j| constant_matrix(module, Factor::Left, Side::Spinor, j);
    let er = |j| constant_matrix(module, Factor::Right, Side::Dual, j);
    let sc = |c: Poly| scalar(size, c);
    let dot = |u: &[Poly], v: &[Poly]| u.iter().zip(v).fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b));

    let mut f = sc(&(&distance_squared(n) * &xi2) * &zeta2);
    f = &f + &sc(&(&(&i2 * &a) * &dot(&x_minus_y, &xi)) * &zeta2);
    f = &f + &sc(&(&(&i2 * &b) * &dot(&y_minus_x, &zeta)) * &xi2);
    f = &f + &(&rho_of(module, Factor::Left, &x_minus_y) * &rho_xi).map(|e| &(e * &i2) * &zeta2);
    f = &f + &(&rho_of(module, Factor::Right, &y_minus_x) * &rho_zeta).map(|e| &(e * &i2) * &xi2);
    f = &f - &sc(&(&(&s() + &p(1)) * &a) * &zeta2);
    f = &f - &sc(&(&(&t() + &p(1)) * &b) * &xi2);
    f = &f + &sc(&(&(&a * &b) * &p(2)) * &dot(&xi, &zeta));
    for j in 1..=n {
        let xj = &xi[j - 1];
        let zj = &zeta[j - 1];
        f = &f + &(&er(j) * &rho_zeta).map(|e| &(e * xj) * &(&a * &p(2)));
        f = &f + &(&el(j) * &rho_xi).map(|e| &(e * zj) * &(&b * &p(2)));
        f = &f + &(&(&el(j) * &rho_xi) * &(&er(j) * &rho_zeta)).map(|e| e * &p(2));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::DerivIndex;

    fn lambda() -> Poly {
        Poly::var(Var::LAMBDA)
    }

    fn mu() -> Poly {
        Poly::var(Var::MU)
    }

    #[test]
    fn symbol_of_f_is_the_printed_polynomial() {
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            assert_eq!(build_f(&m).unwrap().symbol(), f_symbol(&m), "n = {n}");
        }
    }

    #[test]
    fn printed_coefficients_of_e() {
        let n = 2;
        let m = CliffordModule::new(n).unwrap();
        let e = build_e(&m, &lambda(), &mu()).unwrap();
        let size = m.tensor_dim();
        let a = &(&lambda() * &p(2)) - &p(1);
        let b = &(&mu() * &p(2)) - &p(1);
        let dy2 = DerivIndex::new(&[0, 0], &[2, 0]);
        // Lap_y appears with (2 lambda - n + 1)(2 lambda + 1).
        assert_eq!(e.coeff(&dy2), scalar(size, &a * &(&(&lambda() * &p(2)) + &p(1))));
        let subs = lambda_mu_substitution(&lambda(), &mu());
        let c: Vec<Poly> = f_coefficients(n).iter().map(|c| c.substitute_all(&subs)).collect();
        assert_eq!(c[1], &a * &p(2));
        assert_eq!(c[7], &(&a * &b) * &p(-2));
    }

    #[test]
    fn only_the_fifth_term_differs_from_the_printed_form() {
        for n in 1..=3 {
            let d = e_discrepancies(n, &lambda(), &mu());
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].index, 5);
            assert_eq!(d[0].substituted, -d[0].printed.clone());
        }
    }

    #[test]
    fn e_depends_on_the_difference_only() {
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            assert!(build_e(&m, &lambda(), &mu()).unwrap().depends_on_difference_only());
        }
    }
}
