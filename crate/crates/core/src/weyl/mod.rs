//! Differential operators with matrix-valued polynomial coefficients,
//! their symbols, and the symbol ring of Clifford-Riesz kernels.

mod operator;
mod riesz;

pub use operator::{DerivIndex, PolyMat, WeylOperator};
pub use riesz::{symb_conv_then_diff, symb_conv_then_mult, Exponent, RieszSymbol};

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::scalar::{Block, GaussianRational, MultiPoly, Var};
use crate::spin::{CliffordModule, Side};
use crate::Poly;

/// Operator over the Gaussian rationals, the working type of the engine.
pub type Op = WeylOperator<GaussianRational>;

/// Lifts a constant matrix into polynomial entries.
pub fn poly_matrix(m: &Matrix<GaussianRational>) -> PolyMat<GaussianRational> {
    m.map(|c| MultiPoly::constant(c.clone()))
}

/// Where a matrix acting on one factor sits on `S (x) S'`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// Acts on `S` only (`A (x) 1`).
    Left,
    /// Acts on `S'` only (`1 (x) A`).
    Right,
    /// Acts on a single module, no tensor product.
    Alone,
}

/// Embeds a single-factor matrix into the tensor product.
pub fn embed(module: &CliffordModule, factor: Factor, a: &Matrix<GaussianRational>) -> Matrix<GaussianRational> {
    let id = Matrix::identity(module.dim());
    match factor {
        Factor::Left => a.kron(&id),
        Factor::Right => id.kron(a),
        Factor::Alone => a.clone(),
    }
}

/// Embeds a single-factor operator into the tensor product.
pub fn embed_op(module: &CliffordModule, factor: Factor, op: &Op) -> Op {
    let id = Matrix::<Poly>::identity(module.dim());
    let size = match factor {
        Factor::Alone => op.rows(),
        _ => op.rows() * module.dim(),
    };
    let mut out = Op::zero(op.n(), op.two_blocks(), size, size);
    for (d, m) in op.terms() {
        let m = match factor {
            Factor::Left => m.kron(&id),
            Factor::Right => id.kron(m),
            Factor::Alone => m.clone(),
        };
        out.add_term(*d, m);
    }
    out
}

/// Side of the pairing a tensor factor carries.
fn side_of(factor: Factor) -> Side {
    match factor {
        Factor::Right => Side::Dual,
        _ => Side::Spinor,
    }
}

/// Size of the space operators act on for a given factor choice.
pub fn space_dim(module: &CliffordModule, factor: Factor) -> usize {
    match factor {
        Factor::Alone => module.dim(),
        _ => module.tensor_dim(),
    }
}

/// `rho(v)` (or `rho'(v)`) for a vector of polynomials, embedded per `factor`.
pub fn rho_of(module: &CliffordModule, factor: Factor, v: &[Poly]) -> PolyMat<GaussianRational> {
    let mut acc = Matrix::zeros(space_dim(module, factor), space_dim(module, factor));
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = embed(module, factor, &module.generator(side_of(factor), j + 1));
        acc = &acc + &poly_matrix(&g).map(|e| e * c);
    }
    acc
}

/// The vector `x - y` (or `y - x` when `x_minus_y` is false) as polynomials.
pub fn difference(n: usize, x_minus_y: bool) -> Vec<Poly> {
    (1..=n)
        .map(|j| {
            let d = &Poly::var(Var::x(j)) - &Poly::var(Var::y(j));
            if x_minus_y {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// `|x - y|^2`.
pub fn distance_squared(n: usize) -> Poly {
    difference(n, true).iter().fold(Poly::zero(), |acc, d| &acc + &(d * d))
}

/// `sum_j rho(e_j) d/dv_j` on the given block, embedded per `factor`.
pub fn dirac(module: &CliffordModule, factor: Factor, block: Block, two_blocks: bool) -> Op {
    let n = module.n();
    let size = space_dim(module, factor);
    let mut op = Op::zero(n, two_blocks, size, size);
    for j in 1..=n {
        let g = embed(module, factor, &module.generator(side_of(factor), j));
        op.add_term(DerivIndex::unit(block, j), poly_matrix(&g));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gaussian;

    #[test]
    fn dirac_squares_to_minus_laplacian() {
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            for factor in [Factor::Alone, Factor::Left, Factor::Right] {
                let block = if factor == Factor::Right { Block::Y } else { Block::X };
                let d = dirac(&m, factor, block, true);
                let sq = d.compose(&d).unwrap();
                let lap = Op::laplacian(n, true, space_dim(&m, factor), block);
                assert!(sq.plus(&lap).is_zero(), "n = {n}, {factor:?}");
            }
        }
    }

    #[test]
    fn symbol_of_dirac_is_i_rho_xi() {
        let m = CliffordModule::new(2).unwrap();
        let d = dirac(&m, Factor::Alone, Block::X, false);
        let xi: Vec<Poly> = (1..=2).map(|j| Poly::var(Var::xi(j))).collect();
        let i = Poly::constant(gaussian(crate::rational(0, 1), crate::rational(1, 1)));
        let expect = rho_of(&m, Factor::Alone, &xi).map(|e| e * &i);
        assert_eq!(d.symbol(), expect);
        assert!(!distance_squared(2).is_zero());
    }
}
