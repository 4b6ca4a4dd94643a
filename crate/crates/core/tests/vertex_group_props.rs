use proptest::prelude::*;
use tropvertex::exactnum::rat;
use tropvertex::vertexgroup::{make_s, make_t, wall_automorphism};
use tropvertex::{Mode, RationalFunction, TorusAutomorphism, Wall};

const N: u32 = 4;

fn arb_wall() -> impl Strategy<Value = Wall> {
    let dir = prop::sample::select(vec![(1i64, 0i64), (0, 1), (1, 1), (2, 1), (1, 2), (1, 3)]);
    let coeff = (-3i64..=3, 1i64..=3, -2i64..=2)
        .prop_map(|(n, d, e)| RationalFunction::s_pow(e).scale(&rat(n, d)));
    (dir, prop::collection::vec(coeff, 1..3)).prop_map(|((a, b), cs)| {
        Wall::with_coeffs(
            a,
            b,
            cs.into_iter().enumerate().map(|(i, c)| (i as u32 + 1, c)),
        )
        .unwrap()
    })
}

fn arb_element(mode: Mode) -> impl Strategy<Value = TorusAutomorphism> {
    prop::collection::vec(arb_wall(), 1..3).prop_map(move |ws| {
        ws.iter()
            .fold(TorusAutomorphism::identity(mode, N), |acc, w| {
                acc.compose(&wall_automorphism(w, mode, N).unwrap())
                    .unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quantum_group_axioms(f in arb_element(Mode::Quantum), g in arb_element(Mode::Quantum), h in arb_element(Mode::Quantum)) {
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        let inv = f.invert().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&f).unwrap().is_identity());
        prop_assert!(f.compose(&g).unwrap().preserves_relation());
        let id = TorusAutomorphism::identity(Mode::Quantum, N);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn commutative_group_axioms(f in arb_element(Mode::Commutative), g in arb_element(Mode::Commutative)) {
        let fg = f.compose(&g).unwrap();
        let inv = fg.invert().unwrap();
        prop_assert_eq!(inv, g.invert().unwrap().compose(&f.invert().unwrap()).unwrap());
    }

    #[test]
    fn specialization_is_a_homomorphism(f in arb_element(Mode::Quantum), g in arb_element(Mode::Quantum)) {
        let lhs = f.compose(&g).unwrap().at_s_one();
        // coefficients with s-powers only: no poles at s = 1
        let lhs = lhs.unwrap();
        let rhs = f.at_s_one().unwrap().compose(&g.at_s_one().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_have_inverses(l in 1i64..=3) {
        for mode in [Mode::Commutative, Mode::Quantum] {
            for phi in [make_s(l, mode, N).unwrap(), make_t(l, mode, N).unwrap()] {
                prop_assert!(phi.compose(&phi.invert().unwrap()).unwrap().is_identity());
            }
        }
    }
}
