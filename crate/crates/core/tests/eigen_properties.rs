use eigenspace_core::eigen::{
    certify, commutant_dimension, dual_cyclic_check, eigen_check, equivariance_check,
    evaluation_matrix, evaluation_rank, harmonic_evaluation_rank, intertwiner, is_generic, model_act, FormalExp,
    InducedModel, Weight, NON_GENERIC_STATUS,
};
use eigenspace_core::group::g_multiply;
use eigenspace_core::invariants::{compute_harmonics, find_fundamental_invariants};
use eigenspace_core::{builtin, Cyclotomic, GroupElement, ReflectionGroup};
use proptest::prelude::*;

const SPECS: [&str; 3] = ["dihedral:3", "dihedral:4", "symmetric:3"];

fn group(i: usize) -> ReflectionGroup {
    builtin(SPECS[i]).unwrap()
}

fn q(a: i64, b: i64) -> Cyclotomic {
    Cyclotomic::from_fraction(a, b)
}

fn standard_translations(n: usize) -> Vec<Vec<Cyclotomic>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1, 1) } else { q(1, 7) }).collect())
        .collect()
}

fn element(g: &ReflectionGroup, k: usize, t: &[(i64, i64)]) -> GroupElement {
    GroupElement {
        translation: t.iter().take(g.dimension()).map(|&(a, b)| q(a, b)).collect(),
        rotation: k % g.order(),
    }
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..7, 1i64..4), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn model_action_homomorphism(
        gi in 0usize..3,
        w in prop::collection::vec(-5i64..6, 3),
        (k1, k2) in (0usize..24, 0usize..24),
        (t1, t2) in (rationals(3), rationals(3)),
        v in rationals(8),
    ) {
        let g = group(gi);
        let m = InducedModel::new(&g, Weight::imaginary_integers(&w[..g.dimension()])).unwrap();
        let v: Vec<FormalExp> = v[..g.order()].iter().map(|&(a, b)| FormalExp::constant(q(a, b))).collect();
        let (a, b) = (element(&g, k1, &t1), element(&g, k2, &t2));
        let lhs = model_act(&m, &a, &model_act(&m, &b, &v).unwrap()).unwrap();
        let rhs = model_act(&m, &g_multiply(&g, &a, &b), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intertwiner_is_equivariant(
        gi in 0usize..3,
        w in prop::collection::vec(-5i64..6, 3),
        k in 0usize..24,
        t in rationals(3),
        v in rationals(8),
    ) {
        let g = group(gi);
        let m = InducedModel::new(&g, Weight::imaginary_integers(&w[..g.dimension()])).unwrap();
        let v: Vec<FormalExp> = v[..g.order()].iter().map(|&(a, b)| FormalExp::constant(q(a, b))).collect();
        prop_assert!(equivariance_check(&m, &element(&g, k, &t), &v).unwrap());
    }

    #[test]
    fn genericity_rank_and_commutant_agree(
        gi in 0usize..3,
        w in prop::collection::vec(-3i64..4, 3),
    ) {
        let g = group(gi);
        let f = find_fundamental_invariants(&g).unwrap();
        let h = compute_harmonics(&g, &f).unwrap();
        let weight = Weight::imaginary_integers(&w[..g.dimension()]);
        let m = InducedModel::new(&g, weight.clone()).unwrap();
        let generic = is_generic(&g, &weight);
        let rank = evaluation_rank(&evaluation_matrix(&m, &h).unwrap());
        let cd = commutant_dimension(&m, &standard_translations(g.dimension()), 128).unwrap();
        prop_assert!(cd.agree());
        prop_assert_eq!(rank, m.orbit().distinct());
        prop_assert_eq!(harmonic_evaluation_rank(&m, &h).unwrap(), rank);
        prop_assert_eq!(generic, m.orbit().distinct() == g.order());
        prop_assert_eq!(generic, rank == g.order());
        prop_assert_eq!(generic, cd.exact == 1);
        prop_assert_eq!(cd.exact, m.orbit().multiplicity());
    }

    #[test]
    fn orbit_plane_waves_are_eigenfunctions(gi in 0usize..3, w in prop::collection::vec(-5i64..6, 3)) {
        let g = group(gi);
        let f = find_fundamental_invariants(&g).unwrap();
        let weight = Weight::imaginary_integers(&w[..g.dimension()]);
        let m = InducedModel::new(&g, weight.clone()).unwrap();
        for h in 0..g.order() {
            prop_assert!(eigen_check(&intertwiner(&m, &m.basis_vector(h)), &f, &weight));
        }
    }
}

#[test]
fn regular_representation_at_zero_weight() {
    for spec in ["dihedral:3", "dihedral:5", "symmetric:3", "hyperoctahedral:2"] {
        let g = builtin(spec).unwrap();
        let m = InducedModel::new(&g, Weight::zero(g.dimension())).unwrap();
        let cd = commutant_dimension(&m, &standard_translations(g.dimension()), 128).unwrap();
        assert_eq!((cd.exact, cd.numeric), (g.order(), g.order()), "{spec}");
    }
}

#[test]
fn dual_vector_generates_for_generic_weight() {
    let g = builtin("dihedral:4").unwrap();
    let m = InducedModel::new(&g, Weight::imaginary_integers(&[2, 5])).unwrap();
    let samples: Vec<GroupElement> = (0..g.order())
        .map(|k| GroupElement {
            translation: vec![q(k as i64, 5), q(3 - (k * k) as i64, 11)],
            rotation: k,
        })
        .collect();
    assert_eq!(dual_cyclic_check(&m, &samples, 128), Ok(true));
}

#[test]
fn certification_d3_and_zero_weight_d4() {
    let d3 = builtin("dihedral:3").unwrap();
    let f = find_fundamental_invariants(&d3).unwrap();
    let h = compute_harmonics(&d3, &f).unwrap();
    let m = InducedModel::new(&d3, Weight::imaginary_integers(&[1, 2])).unwrap();
    let c = certify(&m, &h, &standard_translations(2), 128).unwrap();
    assert!(c.irreducible_certified && c.generic);
    assert_eq!(c.evaluation_rank, 6);

    let d4 = builtin("dihedral:4").unwrap();
    let f = find_fundamental_invariants(&d4).unwrap();
    let h = compute_harmonics(&d4, &f).unwrap();
    let m = InducedModel::new(&d4, Weight::zero(2)).unwrap();
    let c = certify(&m, &h, &standard_translations(2), 128).unwrap();
    assert_eq!(c.status, NON_GENERIC_STATUS);
    assert_eq!((c.evaluation_rank, c.commutant.exact), (1, 8));
}
