mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use skewbrace::brace::{brace_isomorphic, direct_product, SkewBrace};
use skewbrace::isoclinism::{are_isoclinic, fingerprint, verify_isoclinism};
use skewbrace::perm::Perm;

fn order_eight() -> &'static [SkewBrace] {
    static CELL: OnceLock<Vec<SkewBrace>> = OnceLock::new();
    CELL.get_or_init(|| common::census_braces(8))
}

fn relabeling() -> impl Strategy<Value = Perm> {
    Just((1..8).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|tail| Perm::from_images(std::iter::once(0).chain(tail).collect()).unwrap())
}

fn is_brace_map(f: &Perm, a: &SkewBrace, b: &SkewBrace) -> bool {
    let n = a.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            f.apply(a.add(x, y)) == b.add(f.apply(x), f.apply(y))
                && f.apply(a.circ(x, y)) == b.circ(f.apply(x), f.apply(y))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeled_braces_are_isomorphic_and_isoclinic(i in 0usize..47, p in relabeling()) {
        let a = &order_eight()[i];
        let b = a.relabel(&p);
        let f = brace_isomorphic(a, &b).expect("relabeling is an isomorphism");
        prop_assert!(is_brace_map(&f, a, &b));
        prop_assert_eq!(fingerprint(a), fingerprint(&b));
        let w = are_isoclinic(a, &b).expect("isomorphic braces are isoclinic");
        prop_assert!(verify_isoclinism(a, &b, &w).is_ok());
    }

    #[test]
    fn lambda_is_an_action_by_automorphisms(i in 0usize..47) {
        let a = &order_eight()[i];
        prop_assert!(a.pointwise_maps().check_action_laws().is_ok());
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    prop_assert_eq!(a.lambda(a.circ(x, y), z), a.lambda(x, a.lambda(y, z)));
                    prop_assert_eq!(a.lambda(x, a.add(y, z)), a.add(a.lambda(x, y), a.lambda(x, z)));
                    // a * (b + c) = a * b + b + a * c - b
                    let lhs = a.star(x, a.add(y, z));
                    let rhs = a.sub(a.add(a.add(a.star(x, y), y), a.star(x, z)), y);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn characteristic_subsets_are_ideals(i in 0usize..47) {
        let a = &order_eight()[i];
        let comm = a.commutator_ideal().unwrap();
        prop_assert!(comm.is_ideal());
        prop_assert!(a.socle().is_ideal());
        prop_assert!(a.annihilator().is_ideal());
        prop_assert!(a.annihilator().is_subset_of(&a.socle()));
        let (q, _) = a.quotient(&comm).unwrap();
        prop_assert!(q.is_trivial() && q.additive_group().is_abelian());
    }

    #[test]
    fn quotient_maps_are_homomorphisms(i in 0usize..47, pick in any::<prop::sample::Index>()) {
        let a = &order_eight()[i];
        let ideals = a.ideals();
        let k = &ideals[pick.index(ideals.len())];
        let (q, proj) = a.quotient(k).unwrap();
        prop_assert_eq!(q.order() * k.len(), 8);
        for x in 0..8 {
            for y in 0..8 {
                prop_assert_eq!(proj[a.add(x, y)], q.add(proj[x], proj[y]));
                prop_assert_eq!(proj[a.circ(x, y)], q.circ(proj[x], proj[y]));
            }
        }
    }

    #[test]
    fn products_multiply_annihilators(i in 0usize..47, j in 0usize..4) {
        let a = &order_eight()[i];
        let b = common::census_braces_small(4)[j].clone();
        let p = direct_product(a, &b);
        prop_assert_eq!(p.order(), 32);
        prop_assert_eq!(p.annihilator().len(), a.annihilator().len() * b.annihilator().len());
        prop_assert_eq!(
            p.commutator_ideal().unwrap().len(),
            a.commutator_ideal().unwrap().len() * b.commutator_ideal().unwrap().len()
        );
    }
}

#[test]
fn the_two_order_eight_examples_are_braces() {
    for b in [common::order_eight_a(), common::order_eight_b()] {
        assert_eq!(b.order(), 8);
        assert!(!b.is_trivial());
    }
}

#[test]
fn literal_b_is_not_a_group() {
    assert!(common::literal_b_table().is_err());
}
