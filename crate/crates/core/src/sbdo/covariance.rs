//! Infinitesimal covariance residuals for `M`, `E_{lambda,mu}` and the
//! family `B^(m)_{k;lambda,mu}`.  Each residual is a `WeylOperator` that
//! must vanish identically.

use super::source::{build_e, build_m, build_printed_e};
use crate::clifford::Multivector;
use crate::conformal::{infinitesimal_action, infinitesimal_action_tensor};
use crate::error::Result;
use crate::scalar::{Block, Rational};
use crate::spin::{CliffordModule, MRep};
use crate::weyl::Op;
use crate::Poly;

/// Which operator a residual is taken for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    /// `M`, lowering both weights by one.
    Multiplication,
    /// `E_{lambda,mu}` built by substitution, raising both weights by one.
    Source,
    /// The printed closed form of `E_{lambda,mu}`.
    PrintedSource,
}

impl SourceKind {
    pub fn shift(self) -> i64 {
        match self {
            SourceKind::Multiplication => -1,
            SourceKind::Source | SourceKind::PrintedSource => 1,
        }
    }

    pub fn build(self, module: &CliffordModule, lambda: &Poly, mu: &Poly) -> Result<Op> {
        match self {
            SourceKind::Multiplication => Ok(build_m(module)),
            SourceKind::Source => build_e(module, lambda, mu),
            SourceKind::PrintedSource => build_printed_e(module, lambda, mu),
        }
    }
}

/// `op o D_{lambda,mu}(X) - D_{lambda+shift,mu+shift}(X) o op` with
/// `D = d pi_lambda (x) 1 + 1 (x) d pi'_mu`.
pub fn tensor_residual(module: &CliffordModule, op: &Op, x: &Multivector<Rational>, lambda: &Poly, mu: &Poly, shift: i64) -> Result<Op> {
    let before = infinitesimal_action_tensor(x, lambda, mu, module)?;
    let s = Poly::from_int(shift);
    let after = infinitesimal_action_tensor(x, &(lambda + &s), &(mu + &s), module)?;
    op.compose(&before)?.try_sub(&after.compose(op)?)
}

pub fn source_residual(kind: SourceKind, module: &CliffordModule, x: &Multivector<Rational>, lambda: &Poly, mu: &Poly) -> Result<Op> {
    tensor_residual(module, &kind.build(module, lambda, mu)?, x, lambda, mu, kind.shift())
}

/// Residual of `d pi_{k;lambda+mu+2m}(X) o B = B o D_{lambda,mu}(X)` on the
/// diagonal, for a `B` built with parameters `lambda`, `mu` and order `m`.
pub fn sbdo_residual(module: &CliffordModule, b: &Op, k: usize, m: usize, x: &Multivector<Rational>, lambda: &Poly, mu: &Poly) -> Result<Op> {
    let n = module.n();
    let before = infinitesimal_action_tensor(x, lambda, mu, module)?;
    let weight = &(lambda + mu) + &Poly::from_int(2 * m as i64);
    let target = infinitesimal_action(x, &weight, &MRep::KForm { n, k }, Block::X, false)?.lift_diagonal()?;
    b.compose(&before)?.restrict_diagonal().try_sub(&target.compose(b)?.restrict_diagonal())
}
