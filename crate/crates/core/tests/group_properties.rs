use eigenspace_core::group::{g_inverse, g_multiply, is_pseudo_reflection_group, rotation};
use eigenspace_core::poly::{act, reynolds};
use eigenspace_core::{builtin, closure, Cyclotomic, GroupElement, Poly, ReflectionGroup};
use proptest::prelude::*;

fn groups() -> Vec<ReflectionGroup> {
    ["dihedral:3", "dihedral:4", "dihedral:5", "symmetric:3", "hyperoctahedral:2"]
        .iter()
        .map(|s| builtin(s).unwrap())
        .collect()
}

fn element(group: &ReflectionGroup, k: usize, t: &[(i64, i64)]) -> GroupElement {
    GroupElement {
        translation: t
            .iter()
            .take(group.dimension())
            .map(|&(a, b)| Cyclotomic::from_fraction(a, b))
            .collect(),
        rotation: k % group.order(),
    }
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..8, 1i64..5), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn semidirect_product_is_a_group(
        gi in 0usize..5,
        (k1, k2, k3) in (0usize..64, 0usize..64, 0usize..64),
        (t1, t2, t3) in (coords(), coords(), coords()),
    ) {
        let g = &groups()[gi];
        let (a, b, c) = (element(g, k1, &t1), element(g, k2, &t2), element(g, k3, &t3));
        let ab_c = g_multiply(g, &g_multiply(g, &a, &b), &c);
        let a_bc = g_multiply(g, &a, &g_multiply(g, &b, &c));
        prop_assert_eq!(ab_c, a_bc);
        let e = GroupElement::identity(g.dimension());
        prop_assert_eq!(g_multiply(g, &a, &g_inverse(g, &a)), e.clone());
        prop_assert_eq!(g_multiply(g, &g_inverse(g, &a), &a), e);
    }

    #[test]
    fn action_is_a_homomorphism(gi in 0usize..5, i in 0usize..64, j in 0usize..64, a in 0u32..4, b in 0u32..4) {
        let g = &groups()[gi];
        let n = g.dimension();
        let (i, j) = (i % g.order(), j % g.order());
        let p = Poly::var(n, 0).pow(a).mul(&Poly::var(n, 1).pow(b)).add(&Poly::var(n, n - 1));
        let ki = g.element(i);
        let kj = g.element(j);
        prop_assert_eq!(act(&ki.mul(kj), &p), act(ki, &act(kj, &p)));
    }

    #[test]
    fn reynolds_projects_onto_invariants(gi in 0usize..5, a in 0u32..5, b in 0u32..5) {
        let g = &groups()[gi];
        let n = g.dimension();
        let p = Poly::var(n, 0).pow(a).mul(&Poly::var(n, n - 1).pow(b));
        let r = reynolds(g, &p);
        prop_assert_eq!(reynolds(g, &r), r.clone());
        for k in g.elements() {
            prop_assert_eq!(act(k, &r), r.clone());
        }
    }
}

#[test]
fn builtin_orders_and_reflections() {
    for n in 3..=8u32 {
        let g = builtin(&format!("dihedral:{n}")).unwrap();
        assert_eq!(g.order(), 2 * n as usize);
        assert_eq!(g.reflection_count(), n as usize);
        assert!(g.elements().iter().all(|k| k.is_orthogonal()));
        assert_eq!(is_pseudo_reflection_group(&g), Ok(true));
    }
    assert_eq!(builtin("symmetric:4").unwrap().order(), 24);
    assert_eq!(builtin("hyperoctahedral:3").unwrap().order(), 48);
    assert_eq!(builtin("hyperoctahedral:3").unwrap().reflection_count(), 9);
    let c5 = builtin("cyclic:5").unwrap();
    assert_eq!(c5.reflection_count(), 0);
    assert_eq!(is_pseudo_reflection_group(&c5), Ok(false));
}

#[test]
fn closure_ignores_generator_order() {
    let a = closure(&[rotation(1, 6), rotation(2, 6)], 1000).unwrap();
    let b = closure(&[rotation(2, 6), rotation(1, 6)], 1000).unwrap();
    assert_eq!(a.order(), b.order());
    assert!(a.elements().iter().all(|k| b.index_of(k).is_some()));
}

#[test]
fn semidirect_product_example() {
    // ((1,0), R₁)·((0,1), S₀) = ((1,0) + R₁(0,1), R₁S₀) in D₄
    let d4 = builtin("dihedral:4").unwrap();
    let r1 = d4.index_of(&rotation(1, 4)).unwrap();
    let s0 = d4.generator_indices()[1];
    let a = GroupElement { translation: vec![Cyclotomic::one(), Cyclotomic::zero()], rotation: r1 };
    let b = GroupElement { translation: vec![Cyclotomic::zero(), Cyclotomic::one()], rotation: s0 };
    let ab = g_multiply(&d4, &a, &b);
    // R₁ = [[0, −1], [1, 0]], so R₁(0,1) = (−1, 0)
    assert_eq!(ab.translation, vec![Cyclotomic::zero(), Cyclotomic::zero()]);
    assert_eq!(ab.rotation, d4.product_index(r1, s0));
}
