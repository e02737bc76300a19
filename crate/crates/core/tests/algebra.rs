use proptest::prelude::*;

use sbdo_core::clifford::{Multivector, Signature};
use sbdo_core::spin::{CliffordModule, Side};
use sbdo_core::{rational, GaussianRational, Jet, Rational};

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rational(p, q))
}

fn multivector(sig: Signature) -> impl Strategy<Value = Multivector<Rational>> {
    let blades = 1u32 << sig.dim();
    prop::collection::vec((0..blades, small()), 0..6).prop_map(move |t| Multivector::from_terms(sig, t))
}

fn signature() -> impl Strategy<Value = Signature> {
    prop_oneof![(1usize..=4).prop_map(Signature::euclidean), (1usize..=2).prop_map(Signature::lorentzian)]
}

fn triple() -> impl Strategy<Value = (Multivector<Rational>, Multivector<Rational>, Multivector<Rational>)> {
    signature().prop_flat_map(|s| (multivector(s), multivector(s), multivector(s)))
}

fn gaussian(m: &Multivector<Rational>) -> Multivector<GaussianRational> {
    m.map(|c| GaussianRational::new(c.clone(), rational(0, 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geometric_product_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn alpha_reverses_products((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).alpha(), &b.alpha() * &a.alpha());
        prop_assert_eq!(a.alpha().alpha(), a);
    }

    #[test]
    fn clifford_modules_are_representations(
        (n, a, b) in (1usize..=4).prop_flat_map(|n| (Just(n), multivector(Signature::euclidean(n)), multivector(Signature::euclidean(n))))
    ) {
        let m = CliffordModule::new(n).unwrap();
        let (a, b) = (gaussian(&a), gaussian(&b));
        for side in [Side::Spinor, Side::Dual] {
            let lhs = m.rho_extend(side, &(&a * &b)).unwrap();
            let rhs = &m.rho_extend(side, &a).unwrap() * &m.rho_extend(side, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jets_differentiate_polynomials(coeffs in prop::collection::vec(small(), 1..6), x in small()) {
        // Horner over jets against the termwise derivative.
        let jet = coeffs.iter().rev().fold(Jet::constant(rational(0, 1)), |acc, c| {
            acc * Jet::new(x.clone(), rational(1, 1)) + Jet::constant(c.clone())
        });
        let mut value = rational(0, 1);
        let mut slope = rational(0, 1);
        let mut power = rational(1, 1);
        for (k, c) in coeffs.iter().enumerate() {
            value += c * &power;
            if k + 1 < coeffs.len() {
                slope += &coeffs[k + 1] * &power * rational(k as i64 + 1, 1);
            }
            power *= &x;
        }
        prop_assert_eq!(jet.value, value);
        prop_assert_eq!(jet.slope, slope);
    }
}
