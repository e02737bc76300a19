use proptest::prelude::*;

use sbdo_core::scalar::Block;
use sbdo_core::weyl::{DerivIndex, Op};
use sbdo_core::{Matrix, Poly, Var};

fn coefficient() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u8..=2, 0u8..=1), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::from_int(0), |acc, (c, ex, ey)| {
            let mut t = Poly::from_int(c);
            for _ in 0..ex {
                t = &t * &Poly::var(Var::x(1));
            }
            for _ in 0..ey {
                t = &t * &Poly::var(Var::y(1));
            }
            &acc + &t
        })
    })
}

fn operator() -> impl Strategy<Value = Op> {
    prop::collection::vec((0u8..=2, 0u8..=1, coefficient()), 1..4).prop_map(|terms| {
        let mut op = Op::zero(1, true, 1, 1);
        for (a, b, c) in terms {
            op.add_term(DerivIndex::new(&[a], &[b]), Matrix::scalar(1, c));
        }
        op
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_application(a in operator(), b in operator(), f in coefficient()) {
        let f = Matrix::scalar(1, &f * &Poly::var(Var::x(1)));
        let lhs = a.compose(&b).unwrap().apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbol_round_trip(a in operator()) {
        prop_assert_eq!(Op::from_symbol(1, true, &a.symbol()), a);
    }

    #[test]
    fn diagonal_restriction_commutes_with_lifting(a in operator(), f in coefficient()) {
        // For D in x alone: D(F(x, x)) = (lift(D) F)(x, x).
        let d = Op::partial(1, true, 1, Block::X, 1).compose(&Op::partial(1, true, 1, Block::X, 1)).unwrap();
        let d = Op::multiplication(1, true, Matrix::scalar(1, Poly::var(Var::x(1)))).compose(&d).unwrap();
        let g = a.apply(&Matrix::scalar(1, f)).unwrap();
        let on_diagonal = |m: &Matrix<Poly>| m.map(|p| p.substitute(Var::y(1), &Poly::var(Var::x(1))));
        let lhs = d.apply(&on_diagonal(&g)).unwrap();
        let rhs = on_diagonal(&d.lift_diagonal().unwrap().apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn canonical_commutator() {
    let dx = Op::partial(1, false, 1, Block::X, 1);
    let x = Op::multiplication(1, false, Matrix::scalar(1, Poly::var(Var::x(1))));
    assert_eq!(dx.commutator(&x).unwrap(), Op::identity(1, false, 1));
}
