use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sbdo_core::clifford::{Multivector, Signature};
use sbdo_core::conformal::sample::{random_factors, random_point, rational_length_point};
use sbdo_core::conformal::{
    bivector_basis, conformal_action, gn_factorize, infinitesimal_action, reflect_e1, GroupElement,
};
use sbdo_core::scalar::Block;
use sbdo_core::spin::{CliffordModule, MRep, Side};
use sbdo_core::weyl::{DerivIndex, Op};
use sbdo_core::{Error, GaussianRational, Jet, Matrix, Poly, Rational, Var};

fn reps(n: usize) -> Vec<MRep> {
    let m = CliffordModule::new(n).unwrap();
    let mut out = vec![MRep::Spinor(m.clone()), MRep::Dual(m)];
    out.extend((0..=n).map(|k| MRep::KForm { n, k }));
    out
}

#[test]
fn inversion_factorization_on_rational_length_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        let sig = Signature::euclidean(n);
        for _ in 0..24 {
            let (x, len) = rational_length_point(n, &mut rng);
            let len2 = &len * &len;
            let g = GroupElement::w(n).inverse().mul(&GroupElement::nbar(&x));
            let f = gn_factorize(&g).unwrap();
            let xv = Multivector::vector(sig, &x);
            let m = -&(&Multivector::e(sig, 1) * &xv).scale(&(Rational::from_integer(1.into()) / &len));
            let scaled = |v: &[Rational]| v.iter().map(|c| c / &len2).collect::<Vec<_>>();
            assert_eq!(f.v, scaled(&reflect_e1(&x)));
            assert_eq!(f.m, m);
            assert_eq!(f.r, len);
            assert_eq!(f.u, scaled(&x));
        }
    }
}

fn seed_strategy() -> impl Strategy<Value = (usize, u64)> {
    (1usize..=4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_round_trip((n, seed) in seed_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_factors(n, &mut rng);
        let g = f.recompose().unwrap();
        prop_assert_eq!(gn_factorize(&g).unwrap(), f);
    }

    #[test]
    fn action_is_a_homomorphism((n, seed) in seed_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_factors(n, &mut rng).recompose().unwrap().mul(&GroupElement::w(n));
        let h = random_factors(n, &mut rng).recompose().unwrap();
        let x = random_point(n, &mut rng);
        let inner = conformal_action(&h, &x);
        let outer = inner.as_ref().ok().map(|y| conformal_action(&g, y));
        let both = conformal_action(&g.mul(&h), &x);
        if let (Some(Ok(a)), Ok(b)) = (outer, both) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn w_itself_has_no_factorization() {
    assert_eq!(gn_factorize(&GroupElement::<Rational>::w(3)), Err(Error::NotInDenseCell));
}

/// Reads `d pi_lambda(X)` at a point from the factorization of
/// `(1 - tX) nbar_x` over first-order jets.
fn jet_action_at(x: &Multivector<Rational>, point: &[Rational], lambda: &Poly, rep: &MRep) -> Op {
    let n = point.len();
    let jx = x.map(|c| Jet::new(Rational::from_integer(0.into()), -c.clone()));
    let one = Multivector::one(x.signature());
    let g = GroupElement::new(&one + &jx).unwrap();
    let jp: Vec<Jet<Rational>> = point.iter().map(|c| Jet::constant(c.clone())).collect();
    let f = gn_factorize(&g.mul(&GroupElement::nbar(&jp))).unwrap();
    let g_of = |q: &Rational| Poly::constant(GaussianRational::new(q.clone(), Rational::from_integer(0.into())));
    let size = rep.dim();
    let mut op = Op::zero(n, false, size, size);
    for (j, v) in f.v.iter().enumerate() {
        op.add_term(DerivIndex::unit(Block::X, j + 1), Matrix::scalar(size, g_of(&v.slope)));
    }
    let m1 = f.m.map(|c| g_of(&c.slope)).grade(2);
    let rho = rep.action(&m1, |c| Poly::constant(c.clone())).unwrap();
    let weight = &(lambda * &g_of(&f.r.slope)) * &Poly::from_int(-2);
    op.add_term(DerivIndex::zero(), &Matrix::scalar(size, weight) - &rho);
    op
}

#[test]
fn infinitesimal_action_matches_the_jet_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lambda = Poly::var(Var::LAMBDA);
    for n in 1..=3 {
        for rep in reps(n) {
            for (name, x) in bivector_basis(n) {
                let op = infinitesimal_action(&x, &lambda, &rep, Block::X, false).unwrap();
                for _ in 0..3 {
                    let point = random_point(n, &mut rng);
                    let subs: HashMap<Var, Poly> = point
                        .iter()
                        .enumerate()
                        .map(|(j, c)| (Var::x(j + 1), Poly::from_rational(c)))
                        .collect();
                    let expect = jet_action_at(&x, &point, &lambda, &rep);
                    assert_eq!(op.substitute_all(&subs), expect, "n = {n}, X = {name}, {rep:?}");
                }
            }
        }
    }
}

#[test]
fn infinitesimal_action_is_a_representation() {
    let lambda = Poly::var(Var::LAMBDA);
    for n in 1..=3 {
        let basis = bivector_basis(n);
        for rep in reps(n) {
            let ops: Vec<Op> =
                basis.iter().map(|(_, x)| infinitesimal_action(x, &lambda, &rep, Block::X, false).unwrap()).collect();
            for (i, (_, x)) in basis.iter().enumerate() {
                for (j, (_, y)) in basis.iter().enumerate().skip(i + 1) {
                    let bracket = x.commutator(y).unwrap();
                    let lhs = ops[i].commutator(&ops[j]).unwrap();
                    let rhs = infinitesimal_action(&bracket, &lambda, &rep, Block::X, false).unwrap();
                    assert_eq!(lhs, rhs, "n = {n}, {rep:?}");
                }
            }
        }
    }
}

#[test]
fn rotation_actions_respect_brackets() {
    for n in 2..=4 {
        let sig = Signature::euclidean(n);
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        for rep in reps(n) {
            for &(i, j) in &pairs {
                for &(k, l) in &pairs {
                    let a = Multivector::<GaussianRational>::product_of(sig, &[i, j]);
                    let b = Multivector::<GaussianRational>::product_of(sig, &[k, l]);
                    let lhs = rep.action(&a.commutator(&b).unwrap(), |c| c.clone()).unwrap();
                    let rhs = rep.bivector(i, j).commutator(&rep.bivector(k, l)).unwrap();
                    assert_eq!(lhs, rhs, "{rep:?}");
                }
            }
        }
    }
}

#[test]
fn w_twisted_spinor_action() {
    for n in 2..=4 {
        let module = CliffordModule::new(n).unwrap();
        let lsig = Signature::lorentzian(n);
        let w = Multivector::<GaussianRational>::product_of(lsig, &[1, n + 1]);
        let minus_e1 = -&module.generator(Side::Spinor, 1);
        for i in 1..=n {
            for j in i + 1..=n {
                let m = Multivector::<GaussianRational>::product_of(lsig, &[i, j]);
                let twisted = (&(&w.alpha() * &m) * &w).lorentzian_to_euclidean().unwrap();
                let m = m.lorentzian_to_euclidean().unwrap();
                let lhs = &minus_e1 * &module.rho_extend(Side::Spinor, &twisted).unwrap();
                let rhs = &module.rho_extend(Side::Spinor, &m).unwrap() * &minus_e1;
                assert_eq!(lhs, rhs, "n = {n}, e{i}e{j}");
            }
        }
    }
}

#[test]
fn group_words_with_inversions_factorize_or_report() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=4 {
        for _ in 0..40 {
            let g = random_factors(n, &mut rng)
                .recompose()
                .unwrap()
                .mul(&GroupElement::w(n))
                .mul(&GroupElement::nbar(&random_point(n, &mut rng)));
            match gn_factorize(&g) {
                Ok(f) => assert_eq!(f.recompose().unwrap(), g),
                Err(Error::FieldExtensionRequired(_)) | Err(Error::NotInDenseCell) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
