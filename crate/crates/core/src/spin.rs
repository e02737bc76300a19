//! Clifford modules `(S, rho)` over the Euclidean algebra, their duals, the
//! bilinear pairing, the maps `Psi^(k)` from `S (x) S'` to `k`-forms, and
//! the Lie algebra actions of `spin(n)` on these spaces.

use num_traits::{One, Zero};

use crate::clifford::{AdjointMode, Multivector, Signature, Versor};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{gaussian, int, GaussianRational, ImaginaryUnit, Jet, Rational, Ring};

type G = GaussianRational;

/// Gamma matrices `E_j = rho(e_j)` with `E_j E_k + E_k E_j = -2 delta_jk`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordModule {
    n: usize,
    gamma: Vec<Matrix<G>>,
}

/// Which side of the pairing a matrix acts on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Spinor,
    Dual,
}

fn pauli(k: u8) -> Matrix<G> {
    let (z, o) = (G::zero(), G::one());
    let i = G::imag_unit();
    let rows = match k {
        0 => vec![vec![o.clone(), z.clone()], vec![z.clone(), o]],
        1 => vec![vec![z.clone(), o.clone()], vec![o, z]],
        2 => vec![vec![z.clone(), -i.clone()], vec![i, z]],
        _ => vec![vec![o.clone(), z.clone()], vec![z, -o]],
    };
    Matrix::from_rows(rows).expect("2x2")
}

fn kron_all(factors: &[Matrix<G>]) -> Matrix<G> {
    factors.iter().fold(Matrix::identity(1), |acc, f| acc.kron(f))
}

impl CliffordModule {
    /// Hermitian anticommuting involutions from tensor products of Pauli
    /// matrices (`sigma3^(j) (x) sigma1|sigma2 (x) 1...`, plus `sigma3^(m)`
    /// for odd `n`), each multiplied by `i`.  Entries lie in `{0, +-1, +-i}`;
    /// for `n = 1` this gives `E_1 = [i]`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("Clifford module needs n >= 1".into()));
        }
        let m = n / 2;
        let mut gammas = Vec::with_capacity(n);
        for j in 0..m {
            for p in [1, 2] {
                let mut factors = vec![pauli(3); j];
                factors.push(pauli(p));
                factors.extend(std::iter::repeat_with(|| pauli(0)).take(m - j - 1));
                gammas.push(kron_all(&factors));
            }
        }
        if n % 2 == 1 {
            gammas.push(kron_all(&vec![pauli(3); m]));
        }
        let i = G::imag_unit();
        let gamma = gammas.iter().map(|g| g.scale(&i)).collect();
        Ok(CliffordModule { n, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << (self.n / 2)
    }

    /// Dimension of `S (x) S'`.
    pub fn tensor_dim(&self) -> usize {
        self.dim() * self.dim()
    }

    /// `E_j`, 1-based.
    pub fn gamma(&self, j: usize) -> &Matrix<G> {
        &self.gamma[j - 1]
    }

    /// `rho'(e_j) = -E_j^T`.
    pub fn gamma_dual(&self, j: usize) -> Matrix<G> {
        -&self.gamma(j).transpose()
    }

    pub fn generator(&self, side: Side, j: usize) -> Matrix<G> {
        match side {
            Side::Spinor => self.gamma(j).clone(),
            Side::Dual => self.gamma_dual(j),
        }
    }

    /// Extension of `rho` (or `rho'`) to the Euclidean Clifford algebra.
    pub fn rho_extend(&self, side: Side, a: &Multivector<G>) -> Result<Matrix<G>> {
        if a.signature() != Signature::euclidean(self.n) {
            return Err(Error::DimensionMismatch(format!(
                "module for n = {} applied to {:?}",
                self.n,
                a.signature()
            )));
        }
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (blade, c) in a.terms() {
            acc = &acc + &self.blade_matrix(side, blade).scale(c);
        }
        Ok(acc)
    }

    /// `rho(e_{i1}) ... rho(e_{ik})` for the increasing product blade.
    pub fn blade_matrix(&self, side: Side, blade: u32) -> Matrix<G> {
        (0..self.n)
            .filter(|b| blade >> b & 1 == 1)
            .fold(Matrix::identity(self.dim()), |acc, b| &acc * &self.generator(side, b + 1))
    }

    /// `rho(x)` for a vector with coefficients in any ring containing the
    /// Gaussian rationals.
    pub fn rho_vector<T: Ring>(&self, side: Side, x: &[T], embed: impl Fn(&G) -> T) -> Matrix<T> {
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let e = self.generator(side, j + 1).map(|c| embed(c) * xj.clone());
            acc = &acc + &e;
        }
        acc
    }

    /// The operator `L = sum_i rho(e_i) (x) rho'(e_i)` on `S (x) S'`.
    pub fn operator_l(&self) -> Matrix<G> {
        let mut acc = Matrix::zeros(self.tensor_dim(), self.tensor_dim());
        for j in 1..=self.n {
            acc = &acc + &self.gamma(j).kron(&self.gamma_dual(j));
        }
        acc
    }

    /// Matrix of `Psi^(k)`: row `I` (increasing `k`-subsets, lexicographic),
    /// column `a * dim + b` (spinor index major), entry `(E_I)[b][a]`, so
    /// that row `I` applied to `v (x) w'` is `(rho(e_I) v, w')`.
    pub fn psi_matrix(&self, k: usize) -> Result<Matrix<G>> {
        if k > self.n {
            return Err(Error::OutOfRange(format!("k = {k} > n = {}", self.n)));
        }
        let subsets = k_subsets(self.n, k);
        let d = self.dim();
        let mut out = Matrix::zeros(subsets.len(), d * d);
        for (r, subset) in subsets.iter().enumerate() {
            let blade = subset.iter().fold(0u32, |acc, i| acc | 1 << (i - 1));
            let e = self.blade_matrix(Side::Spinor, blade);
            for a in 0..d {
                for b in 0..d {
                    out.set(r, a * d + b, e.get(b, a).clone());
                }
            }
        }
        Ok(out)
    }

    /// Lie algebra action of the bivector `e_i e_j` (`i < j`) on the given
    /// side: the matrix `rho(e_i) rho(e_j)`.
    pub fn bivector_action(&self, side: Side, i: usize, j: usize) -> Matrix<G> {
        &self.generator(side, i) * &self.generator(side, j)
    }
}

/// `(v, w')`: the bilinear dot pairing.
pub fn pairing(v: &[G], w: &[G]) -> G {
    v.iter().zip(w).fold(G::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `Psi^(k)(v (x) w')` as coordinates indexed by increasing `k`-subsets.
pub fn psi_k(module: &CliffordModule, k: usize, v: &[G], w: &[G]) -> Result<Vec<G>> {
    let d = module.dim();
    if v.len() != d || w.len() != d {
        return Err(Error::DimensionMismatch(format!("vectors of length {}/{} for dim {d}", v.len(), w.len())));
    }
    let mut t = Vec::with_capacity(d * d);
    for a in v {
        for b in w {
            t.push(a.clone() * b.clone());
        }
    }
    module.psi_matrix(k)?.apply(&t)
}

/// Increasing `k`-subsets of `{1..n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Lambda^k` of a linear map: the matrix of `k x k` minors.
pub fn exterior_power<T: Ring>(a: &Matrix<T>, k: usize) -> Matrix<T> {
    let subsets = k_subsets(a.rows(), k);
    let idx: Vec<Vec<usize>> = subsets.iter().map(|s| s.iter().map(|i| i - 1).collect()).collect();
    Matrix::from_fn(idx.len(), idx.len(), |r, c| a.minor(&idx[r], &idx[c]))
}

/// `tau*_k(g)` on `k`-form coordinates: `(Lambda^k tau(g^-1))^T`, where
/// `tau(g) x = g x g^-1` for `g` in `Spin(n)`.
pub fn tau_star<T: Ring>(g: &Versor<T>, k: usize) -> Result<Matrix<T>> {
    let inv = Versor::new(g.inverse())?;
    Ok(exterior_power(&inv.adjoint_matrix(AdjointMode::PinConj)?, k).transpose())
}

/// Target spaces of the `spin(n)` Lie algebra action.
#[derive(Clone, Debug, PartialEq)]
pub enum MRep {
    /// `S` with `e_i e_j -> E_i E_j`.
    Spinor(CliffordModule),
    /// `S'` with `e_i e_j -> rho'(e_i) rho'(e_j)`.
    Dual(CliffordModule),
    /// `k`-forms with the differential of `tau*_k`.
    KForm { n: usize, k: usize },
}

impl MRep {
    pub fn dim(&self) -> usize {
        match self {
            MRep::Spinor(m) | MRep::Dual(m) => m.dim(),
            MRep::KForm { n, k } => binomial(*n, *k),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MRep::Spinor(m) | MRep::Dual(m) => m.n(),
            MRep::KForm { n, .. } => *n,
        }
    }

    /// Action of the basis bivector `e_i e_j` (1-based, `i < j`).
    pub fn bivector(&self, i: usize, j: usize) -> Matrix<G> {
        match self {
            MRep::Spinor(m) => m.bivector_action(Side::Spinor, i, j),
            MRep::Dual(m) => m.bivector_action(Side::Dual, i, j),
            MRep::KForm { n, k } => kform_bivector_action(*n, *k, i, j),
        }
    }

    /// Linear extension to a Euclidean bivector with coefficients in `T`.
    pub fn action<T: Ring>(&self, y: &Multivector<T>, embed: impl Fn(&G) -> T) -> Result<Matrix<T>> {
        if !y.is_grade(2) {
            return Err(Error::WrongGrade {
                expected: 2,
                found: y.terms().map(|(b, _)| b.count_ones() as usize).find(|g| *g != 2).unwrap_or(0),
            });
        }
        let sig = y.signature();
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (blade, c) in y.terms() {
            let idx = sig.indices(blade);
            let m = self.bivector(idx[0], idx[1]).map(|x| embed(x) * c.clone());
            acc = &acc + &m;
        }
        Ok(acc)
    }
}

/// `d/dt tau*_k(1 + t e_i e_j)` at `t = 0`, by running the finite formula
/// over first-order jets.
fn kform_bivector_action(n: usize, k: usize, i: usize, j: usize) -> Matrix<G> {
    let sig = Signature::euclidean(n);
    let eps: Jet<G> = Jet::epsilon();
    let y = Multivector::<G>::product_of(sig, &[i, j]).map(|c| Jet::constant(c.clone()));
    // g = 1 + t Y satisfies g alpha(g) = 1 to first order, so g^-1 = alpha(g).
    let g = &Multivector::one(sig) + &y.scale(&eps);
    let ginv = g.alpha();
    let images: Vec<Vec<Jet<G>>> = (0..n)
        .map(|b| {
            let e = Multivector::blade(sig, 1 << b, Jet::one());
            (&(&ginv * &e) * &g).vector_part()
        })
        .collect();
    let tau_inv = Matrix::from_fn(n, n, |r, c| images[c][r].clone());
    exterior_power(&tau_inv, k).transpose().map(|x| x.slope.clone())
}

/// Convenience: the Gaussian rational `a/b`.
pub fn q(a: i64, b: i64) -> G {
    gaussian(Rational::new(a.into(), b.into()), Rational::zero())
}

/// `(-1)^k (n - 2k)`, the eigenvalue of `L` seen through `Psi^(k)`.
pub fn l_eigenvalue(n: usize, k: usize) -> G {
    let v = n as i64 - 2 * k as i64;
    int(if k % 2 == 0 { v } else { -v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_multiplication_by_i() {
        let m = CliffordModule::new(1).unwrap();
        assert_eq!(m.gamma(1), &Matrix::scalar(1, G::imag_unit()));
        assert_eq!(m.operator_l(), Matrix::identity(1));
        let v = [q(3, 1)];
        let w = [q(5, 1)];
        assert_eq!(psi_k(&m, 1, &v, &w).unwrap(), vec![gaussian(Rational::zero(), Rational::from_integer(15.into()))]);
    }

    #[test]
    fn anticommutation_small() {
        for n in 1..=4 {
            let m = CliffordModule::new(n).unwrap();
            for a in 1..=n {
                for b in 1..=n {
                    let ac = m.gamma(a).anticommutator(m.gamma(b)).unwrap();
                    let expect = if a == b { Matrix::scalar(m.dim(), q(-2, 1)) } else { Matrix::zeros(m.dim(), m.dim()) };
                    assert_eq!(ac, expect);
                }
            }
        }
    }

    #[test]
    fn psi_dimensions() {
        let m = CliffordModule::new(4).unwrap();
        assert_eq!(m.psi_matrix(2).unwrap().rows(), 6);
        assert!(m.psi_matrix(5).is_err());
        assert_eq!(k_subsets(4, 2)[1], vec![1, 3]);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn rho_extend_is_multiplicative_on_examples() {
        let m = CliffordModule::new(2).unwrap();
        let sig = Signature::euclidean(2);
        let e1 = Multivector::<G>::e(sig, 1);
        let e2 = Multivector::<G>::e(sig, 2);
        assert_eq!(m.rho_extend(Side::Spinor, &(&e1 * &e1)).unwrap(), Matrix::scalar(2, q(-1, 1)));
        assert_eq!(m.rho_extend(Side::Spinor, &Multivector::one(sig)).unwrap(), Matrix::identity(2));
        assert_eq!(m.rho_extend(Side::Spinor, &(&e1 * &e2)).unwrap(), m.gamma(1) * m.gamma(2));
        let wrong = Multivector::<G>::e(Signature::euclidean(3), 1);
        assert!(m.rho_extend(Side::Spinor, &wrong).is_err());
    }
}
