use std::collections::HashMap;

use proptest::prelude::*;

use sbdo_core::clifford::Multivector;
use sbdo_core::conformal::bivector_basis;
use sbdo_core::sbdo::{build_b, build_e, formal_parameters, sbdo_residual, source_residual, SourceKind};
use sbdo_core::spin::CliffordModule;
use sbdo_core::{rational, Poly, Rational, Var};

fn small() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=5).prop_map(|(p, q)| rational(p, q))
}

fn bivector(n: usize, coeffs: &[Rational]) -> Multivector<Rational> {
    bivector_basis(n).iter().zip(coeffs).fold(Multivector::zero(bivector_basis(n)[0].1.signature()), |acc, ((_, b), c)| {
        &acc + &b.scale(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rational_parameters_specialize_the_formal_family(l in small(), u in small(), k in 0usize..=2) {
        let m = CliffordModule::new(2).unwrap();
        let (fl, fu) = formal_parameters();
        let (pl, pu) = (Poly::from_rational(&l), Poly::from_rational(&u));
        let subs: HashMap<Var, Poly> = [(Var::LAMBDA, pl.clone()), (Var::MU, pu.clone())].into_iter().collect();
        let formal = build_b(&m, k, &fl, &fu, 1).unwrap().substitute_all(&subs);
        prop_assert_eq!(formal, build_b(&m, k, &pl, &pu, 1).unwrap());
        let e = build_e(&m, &fl, &fu).unwrap().substitute_all(&subs);
        prop_assert_eq!(e, build_e(&m, &pl, &pu).unwrap());
    }

    #[test]
    fn covariance_along_random_bivectors(
        l in small(),
        u in small(),
        coeffs in prop::collection::vec(small(), 10),
        k in 0usize..=2,
    ) {
        let m = CliffordModule::new(2).unwrap();
        let (pl, pu) = (Poly::from_rational(&l), Poly::from_rational(&u));
        let x = bivector(2, &coeffs);
        prop_assert!(source_residual(SourceKind::Source, &m, &x, &pl, &pu).unwrap().is_zero());
        let b = build_b(&m, k, &pl, &pu, 1).unwrap();
        prop_assert!(sbdo_residual(&m, &b, k, 1, &x, &pl, &pu).unwrap().is_zero());
    }
}

#[test]
fn wrong_target_weight_is_detected() {
    let m = CliffordModule::new(2).unwrap();
    let (l, u) = formal_parameters();
    let b = build_b(&m, 0, &l, &u, 1).unwrap();
    let h = bivector_basis(2).into_iter().find(|(name, _)| name == "H").unwrap().1;
    // Claiming order 2 shifts the target weight by two.
    assert!(!sbdo_residual(&m, &b, 0, 2, &h, &l, &u).unwrap().is_zero());
}
