use num_bigint::BigInt;
use proptest::prelude::*;
use tropvertex::exactnum::{int, GaussianRational, Rational};
use tropvertex::realenum::{
    eval_minus_one, minus_one_from_invariants, spectrum_polynomial, spectrum_rhs,
    welschinger_spectrum,
};
use tropvertex::tropical::{
    enumerate_types, invariance_probe, invariants, labeled_topologies, random_config,
    TropicalProblem,
};
use tropvertex::{Evaluation, RationalFunction};

fn prob(a: i64, b: i64, k: i64, al: &[i64], alp: &[i64]) -> TropicalProblem {
    TropicalProblem::new(a, b, k, al.to_vec(), alp.to_vec()).unwrap()
}

fn suite() -> Vec<TropicalProblem> {
    vec![
        prob(1, 1, 1, &[1], &[1]),
        prob(2, 1, 1, &[2], &[1]),
        prob(2, 1, 1, &[1, 1], &[1]),
        prob(1, 1, 2, &[1, 1], &[1, 1]),
        prob(3, 2, 1, &[1, 2], &[1, 1]),
        prob(1, 1, 3, &[1, 2], &[3]),
        prob(1, 1, 3, &[1, 1, 1], &[2, 1]),
    ]
}

#[test]
fn refined_invariants_do_not_depend_on_the_configuration() {
    for p in suite() {
        let r = invariance_probe(&p, &[11, 12, 13, 14, 15]).unwrap();
        assert!(r.consistent, "{p}: {r:?}");
        assert!(r.non_generic_seeds.is_empty(), "{p}");
        assert_eq!(r.entries.len(), 5);
    }
}

#[test]
fn golden_values() {
    let golden = [
        (prob(1, 1, 1, &[1], &[1]), "1", "1"),
        (prob(2, 1, 1, &[2], &[1]), "1", "1"),
        (prob(2, 1, 1, &[1, 1], &[1]), "1", "1"),
        (prob(1, 1, 2, &[1, 1], &[1, 1]), "2", "s+s^-1"),
        (prob(3, 2, 1, &[1, 2], &[1, 1]), "4", "s^2+2+s^-2"),
    ];
    for (p, classical, refined) in golden {
        let v = invariants(&p, &random_config(&p, 1)).unwrap();
        assert_eq!(v.classical.to_string(), classical, "{p}");
        assert_eq!(v.refined.to_string(), refined, "{p}");
    }
}

#[test]
fn refined_is_symmetric_and_specializes_to_classical() {
    for p in suite() {
        let v = invariants(&p, &random_config(&p, 3)).unwrap();
        assert_eq!(v.refined.invert_s(), v.refined, "{p}");
        assert_eq!(
            v.refined.eval_rational(&int(1)).unwrap(),
            Some(v.classical.clone()),
            "{p}"
        );
    }
}

#[test]
fn every_vertex_satisfies_pick() {
    for p in suite() {
        let v = invariants(&p, &random_config(&p, 5)).unwrap();
        for c in &v.curves {
            for s in c.vertex_stats().unwrap() {
                assert!(s.interior >= 0);
                assert_eq!(2 * s.interior, s.mu - s.perimeter + 2);
            }
        }
    }
}

#[test]
fn structural_sum_equals_symbolic_value_for_odd_k() {
    for p in suite().into_iter().filter(|p| p.k % 2 == 1) {
        let v = invariants(&p, &random_config(&p, 7)).unwrap();
        let symbolic = eval_minus_one(&v);
        let r = minus_one_from_invariants(&p, v).unwrap();
        let total = r
            .per_curve
            .iter()
            .fold(GaussianRational::zero(), |acc, x| &acc + x);
        assert_eq!(Evaluation::Value(total.clone()), symbolic, "{p}");
        assert!(total.is_real(), "{p}");
    }
}

#[test]
fn even_parts_with_even_k_diverge() {
    let p = prob(1, 1, 2, &[2], &[2]);
    let v = invariants(&p, &random_config(&p, 1)).unwrap();
    assert_eq!(eval_minus_one(&v), Evaluation::Pole);
}

#[test]
fn spectra_are_admissible_and_round_trip() {
    for p in suite() {
        let v = invariants(&p, &random_config(&p, 2)).unwrap();
        let s = welschinger_spectrum(&p, &v.refined).unwrap();
        let bound = 2 * p.k * p.k * p.a * p.b;
        for e in &s {
            assert_eq!(e.kappa % 2, 0);
            assert!(e.kappa.abs() <= bound);
            assert_ne!(e.w, BigInt::from(0));
        }
        assert_eq!(
            spectrum_polynomial(&p, &s),
            spectrum_rhs(&p, &v.refined).unwrap()
        );
    }
}

#[test]
fn type_enumeration_on_five_leaves() {
    assert_eq!(labeled_topologies(4).len(), 15);
    let p = prob(1, 1, 2, &[1, 1], &[1, 1]);
    let types = enumerate_types(&p);
    assert!(types.len() <= 15);
    let encodings: std::collections::BTreeSet<String> =
        types.iter().map(|t| t.to_string()).collect();
    assert_eq!(encodings.len(), types.len());
}

fn small_problem() -> impl Strategy<Value = TropicalProblem> {
    // (a, b) coprime from a short list, k ∈ {1, 2}, random compositions
    let dirs = prop::sample::select(vec![(1i64, 1i64), (2, 1), (1, 2), (3, 1)]);
    (dirs, 1i64..=2, any::<u64>(), any::<u64>()).prop_filter_map(
        "at most five ends",
        |((a, b), k, sa, sb)| {
            let split = |total: i64, mut bits: u64| {
                let mut parts = vec![];
                let mut cur = 1;
                for _ in 1..total {
                    if bits & 1 == 1 {
                        parts.push(cur);
                        cur = 1;
                    } else {
                        cur += 1;
                    }
                    bits >>= 1;
                }
                parts.push(cur);
                parts
            };
            let al = split(k * a, sa);
            let alp = split(k * b, sb);
            (al.len() + alp.len() <= 5).then(|| TropicalProblem::new(a, b, k, al, alp).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariance_symmetry_and_specialization(p in small_problem(), s1 in 0u64..1000, s2 in 1000u64..2000) {
        let v1 = invariants(&p, &random_config(&p, s1));
        let v2 = invariants(&p, &random_config(&p, s2));
        if let (Ok(v1), Ok(v2)) = (v1, v2) {
            prop_assert_eq!(&v1.refined, &v2.refined);
            prop_assert_eq!(v1.refined.invert_s(), v1.refined.clone());
            let at_one: Option<Rational> = v1.refined.eval_rational(&int(1)).unwrap();
            prop_assert_eq!(at_one, Some(v1.classical.clone()));
            prop_assert!(v1.refined != RationalFunction::zero());
        }
    }
}
