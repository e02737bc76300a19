//! Symbol-level identities: the intertwining relation between
//! `(R_s (x) R'_t) o M` and `F_{s,t} o (R_{s+2} (x) R'_{t+2})`, the
//! derivative formulas of the Clifford-Riesz symbols, and the Fourier
//! constants `c_s`, `c~_s` in floating point.

use num_complex::Complex64;
use num_traits::{One, Zero};
use statrs::function::gamma::gamma;

use super::source::{build_f, build_m};
use crate::error::{Error, Result};
use crate::scalar::{Block, GaussianRational, RationalFunction, Var};
use crate::spin::CliffordModule;
use crate::weyl::{rho_of, symb_conv_then_diff, symb_conv_then_mult, DerivIndex, Factor, PolyMat, RieszSymbol};
use crate::Poly;

fn p(v: i64) -> Poly {
    Poly::from_int(v)
}

fn cotangent(n: usize, block: Block) -> Vec<Poly> {
    (1..=n).map(|j| Poly::var(Var::in_block(block, j))).collect()
}

/// `rho(xi) (x) rho'(zeta)` on the tensor product.
fn rho_xi_zeta(module: &CliffordModule) -> PolyMat<GaussianRational> {
    let n = module.n();
    &rho_of(module, Factor::Left, &cotangent(n, Block::Xi)) * &rho_of(module, Factor::Right, &cotangent(n, Block::Zeta))
}

/// The normalized symbol of `R_a (x) R'_b`: `r~_{-a-n}(xi) (x) r~'_{-b-n}(zeta)`.
pub fn riesz_pair(module: &CliffordModule, a: &Poly, b: &Poly) -> RieszSymbol {
    let n = p(module.n() as i64);
    let exp = |v: &Poly| &(-v) - &(&n + &p(1));
    RieszSymbol::single(module.n(), rho_xi_zeta(module), exp(a), exp(b))
}

/// `c(s,t) = 1/((s+1)(s+n+1)(t+1)(t+n+1))`.
pub fn c_st(n: usize) -> RationalFunction<GaussianRational> {
    let (s, t) = (Poly::var(Var::S), Poly::var(Var::T));
    let nn = n as i64;
    let den = &(&(&s + &p(1)) * &(&s + &p(nn + 1))) * &(&(&t + &p(1)) * &(&t + &p(nn + 1)));
    RationalFunction::new(Poly::one(), den).expect("nonzero")
}

/// `c~_{s+2} c~'_{t+2} / (c~_s c~'_t)`, the factor picked up when the
/// normalized symbols replace the convolution operators.
pub fn normalization_ratio(n: usize) -> Poly {
    let (s, t) = (Poly::var(Var::S), Poly::var(Var::T));
    let nn = n as i64;
    &(&(&s + &p(1)) * &(&s + &p(nn + 1))) * &(&(&t + &p(1)) * &(&t + &p(nn + 1)))
}

/// Both sides of the main identity in normalized symbols, with the
/// right-hand constant multiplied by `scale`.
pub fn main_identity_sides(module: &CliffordModule, scale: i64) -> Result<(RieszSymbol, RieszSymbol)> {
    let (s, t) = (Poly::var(Var::S), Poly::var(Var::T));
    let lhs = symb_conv_then_mult(&riesz_pair(module, &s, &t), &build_m(module).coeff(&DerivIndex::zero()))?;
    let rhs = symb_conv_then_diff(&build_f(module)?, &riesz_pair(module, &(&s + &p(2)), &(&t + &p(2))))?;
    let factor = RationalFunction::new(c_st(module.n()).numer() * &normalization_ratio(module.n()), c_st(module.n()).denom().clone())?;
    let factor = factor
        .as_poly()
        .ok_or_else(|| Error::Invariant("the constant of the main identity is not polynomial".into()))?;
    Ok((lhs, rhs.scale(&(&factor * &p(scale)))))
}

/// Exact verdict of the main identity; `scale = 2` is the perturbed check.
pub fn main_identity_check(module: &CliffordModule, scale: i64) -> Result<bool> {
    let (lhs, rhs) = main_identity_sides(module, scale)?;
    lhs.equals(&rhs)
}

/// `d_j r~_s = ((s-1) x_j - rho(e_j x)) r~_{s-2}` in the cotangent variables.
pub fn first_derivative_check(module: &CliffordModule, j: usize) -> Result<bool> {
    let n = module.n();
    let s = Poly::var(Var::S);
    let xi = cotangent(n, Block::Xi);
    let rho = rho_of(module, Factor::Alone, &xi);
    let r = RieszSymbol::clifford_riesz(n, rho.clone(), s.clone());
    let lhs = r.diff(Var::xi(j))?;
    let mut unit = vec![Poly::zero(); n];
    unit[j - 1] = Poly::one();
    let e_j = rho_of(module, Factor::Alone, &unit);
    let scalar = PolyMat::scalar(rho.rows(), &(&s - &p(1)) * &xi[j - 1]);
    let coeff = &scalar - &(&e_j * &rho);
    let rhs = RieszSymbol::clifford_riesz(n, rho, &s - &p(2)).left_mul(&coeff)?;
    lhs.equals(&rhs)
}

/// `Lap r~_s = (s-1)(s+n-1) r~_{s-2}`.
pub fn laplacian_check(module: &CliffordModule) -> Result<bool> {
    let n = module.n();
    let s = Poly::var(Var::S);
    let rho = rho_of(module, Factor::Alone, &cotangent(n, Block::Xi));
    let lhs = RieszSymbol::clifford_riesz(n, rho.clone(), s.clone()).laplacian(Block::Xi)?;
    let c = &(&s - &p(1)) * &(&s + &p(n as i64 - 1));
    lhs.equals(&RieszSymbol::clifford_riesz(n, rho, &s - &p(2)).scale(&c))
}

const POLE_TOLERANCE: f64 = 1e-9;

fn checked_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && (x - x.round()).abs() < POLE_TOLERANCE {
        return Err(Error::PoleProximity(format!("Gamma({x})")));
    }
    Ok(gamma(x))
}

/// `c_s = 2^(s+n) pi^(n/2) Gamma((s+n)/2) / Gamma(-s/2)`.
pub fn c_scalar(s: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let num = checked_gamma((s + nf) / 2.0)?;
    let den = checked_gamma(-s / 2.0)?;
    Ok(2f64.powf(s + nf) * std::f64::consts::PI.powf(nf / 2.0) * num / den)
}

/// `c~_s = -i 2^(s+n) pi^(n/2) Gamma((s+n+1)/2) / Gamma(-(s-1)/2)`.
pub fn c_spinor(s: f64, n: usize) -> Result<Complex64> {
    let nf = n as f64;
    let num = checked_gamma((s + nf + 1.0) / 2.0)?;
    let den = checked_gamma(-(s - 1.0) / 2.0)?;
    let re = 2f64.powf(s + nf) * std::f64::consts::PI.powf(nf / 2.0) * num / den;
    Ok(Complex64::new(0.0, -re))
}

/// Deviations of the two constant relations at `s`:
/// `|c~_{s+2}/c~_s + (s+1)(s+n+1)|` and
/// `|c~_s - i(-s+1-n) c_{s-1}| / |c~_s|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantDeviations {
    pub ratio: f64,
    pub consistency: f64,
}

pub fn riesz_constants(s: f64, n: usize) -> Result<ConstantDeviations> {
    let nf = n as f64;
    let cs = c_spinor(s, n)?;
    let ratio = (c_spinor(s + 2.0, n)? / cs + (s + 1.0) * (s + nf + 1.0)).norm();
    let other = Complex64::new(0.0, -s + 1.0 - nf) * c_scalar(s - 1.0, n)?;
    Ok(ConstantDeviations { ratio, consistency: (cs - other).norm() / cs.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_identity_and_its_perturbation() {
        for n in 1..=2 {
            let m = CliffordModule::new(n).unwrap();
            assert!(main_identity_check(&m, 1).unwrap(), "n = {n}");
            assert!(!main_identity_check(&m, 2).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn derivative_formulas() {
        for n in 1..=3 {
            let m = CliffordModule::new(n).unwrap();
            for j in 1..=n {
                assert!(first_derivative_check(&m, j).unwrap());
            }
            assert!(laplacian_check(&m).unwrap());
        }
    }

    #[test]
    fn constants_at_the_documented_points() {
        assert!(riesz_constants(0.3, 2).unwrap().ratio < 1e-9);
        assert!(riesz_constants(-0.7, 1).unwrap().consistency < 1e-9);
        assert!(matches!(c_scalar(0.0, 2), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn scalar_constant_recurrence() {
        // c_{s+2}/c_s = -(s+n)(s+2) from Gamma(z+1) = z Gamma(z).
        for n in 1..=4 {
            for s in [0.3, -0.7, 1.45, -2.2] {
                let got = c_scalar(s + 2.0, n).unwrap() / c_scalar(s, n).unwrap();
                let expect = -(s + n as f64) * (s + 2.0);
                assert!((got - expect).abs() < 1e-9 * expect.abs().max(1.0));
            }
        }
    }
}
