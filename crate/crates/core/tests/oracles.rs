mod common;

use hochcyc_core::algebra::{coadjoint_invariants_dim, group_algebra, matrix_algebra, RibbonConvention};
use hochcyc_core::fixtures::fixture;
use hochcyc_core::hochschild::{hc, hh, hochschild_cyclic_module};
use hochcyc_core::{Algebra, FieldTag, FiniteGroup};
use proptest::prelude::*;

fn q() -> FieldTag {
    FieldTag::Rationals
}

fn fx(name: &str) -> Algebra {
    fixture(name, q(), RibbonConvention::VInv).unwrap().unwrap()
}

#[test]
fn oracle_agrees_with_known_values() {
    let qa = Algebra::ground_field(q());
    assert_eq!((0..5).map(|n| common::hc(&qa, n)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1]);
    assert_eq!((0..3).map(|n| common::hh(&qa, n)).collect::<Vec<_>>(), vec![1, 0, 0]);
    for (g, classes) in [
        (FiniteGroup::cyclic(2), 2),
        (FiniteGroup::cyclic(3), 3),
        (FiniteGroup::symmetric(3), 3),
    ] {
        assert_eq!(common::class_count(&g), classes);
    }
}

#[test]
fn hh0_of_group_algebras_counts_classes() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::cyclic(4)] {
        let a = group_algebra(&g, q()).unwrap();
        let classes = common::class_count(&g);
        assert_eq!(common::commutator_quotient_dim(&a), classes);
        let bundle = hochschild_cyclic_module(&a, 1).unwrap();
        assert_eq!(hh(&bundle, 0).unwrap(), vec![classes]);
    }
}

#[test]
fn hochschild_dims_match_the_rank_oracle() {
    for name in ["Q", "Q[Z2]", "Q[Z3]", "Q[S3]", "D(Z2)"] {
        let a = fx(name);
        let top = if a.dim() > 4 { 1 } else { 2 };
        let bundle = hochschild_cyclic_module(&a, top + 1).unwrap();
        let expected: Vec<usize> = (0..=top).map(|n| common::hh(&a, n)).collect();
        assert_eq!(hh(&bundle, top).unwrap(), expected, "{name}");
    }
}

#[test]
fn non_semisimple_examples_match_the_rank_oracle() {
    let f2 = FieldTag::prime(2).unwrap();
    // Over ℚ the oracle cannot see characteristic 2, so use a ℚ-algebra with
    // higher homology: the dual numbers.
    let dual = hochcyc_core::specfile::parse_spec(
        r#"{"field": "Q", "dim": 2, "mu": [[0,0,0,1], [0,1,1,1], [1,0,1,1]], "unit": [[0,1]]}"#,
    )
    .unwrap();
    let hochcyc_core::specfile::SpecFile::Algebra(spec) = dual else { panic!() };
    let a = spec.to_algebra().unwrap();
    let bundle = hochschild_cyclic_module(&a, 4).unwrap();
    let expected: Vec<usize> = (0..=3).map(|n| common::hh(&a, n)).collect();
    assert_eq!(hh(&bundle, 3).unwrap(), expected);
    let expected: Vec<usize> = (0..=3).map(|n| common::hc(&a, n)).collect();
    assert_eq!(hc(&bundle, 3).unwrap(), expected);
    // And the modular group algebra differs from its ℚ counterpart.
    let mod2 = group_algebra(&FiniteGroup::cyclic(2), f2).unwrap();
    assert_eq!(hh(&hochschild_cyclic_module(&mod2, 3).unwrap(), 2).unwrap(), vec![2, 2, 2]);
}

#[test]
fn cyclic_homology_matches_the_quotient_oracle() {
    for name in ["Q", "Q[Z2]", "Q[Z3]", "D(Z2)"] {
        let a = fx(name);
        let top = if a.dim() > 3 { 1 } else { 2 };
        let bundle = hochschild_cyclic_module(&a, top + 1).unwrap();
        let expected: Vec<usize> = (0..=top).map(|n| common::hc(&a, n)).collect();
        assert_eq!(hc(&bundle, top).unwrap(), expected, "{name}");
    }
}

#[test]
fn coadjoint_invariants_equal_hh0() {
    for name in ["Q[Z2]", "Q[Z3]", "Q[S3]", "D(Z2)", "D(S3)"] {
        let a = fx(name);
        assert_eq!(coadjoint_invariants_dim(&a).unwrap(), common::commutator_quotient_dim(&a), "{name}");
    }
}

#[test]
fn matrix_algebras_have_the_same_hochschild_homology() {
    for name in ["Q", "Q[Z2]"] {
        let a = fx(name);
        let m = matrix_algebra(&a, 2);
        assert_eq!(common::hh(&m, 0), common::hh(&a, 0));
        assert_eq!(common::hh(&m, 1), common::hh(&a, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// For `p ∤ |G|`, `HH_0(F_p[G])` still counts conjugacy classes.
    #[test]
    fn hh0_counts_classes_in_coprime_characteristic(which in 0usize..4, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)][which].clone();
        let a = group_algebra(&g, FieldTag::prime(p).unwrap()).unwrap();
        let bundle = hochschild_cyclic_module(&a, 1).unwrap();
        prop_assert_eq!(hh(&bundle, 0).unwrap()[0], common::class_count(&g));
    }

    /// HH_0 of a random group algebra over ℚ agrees with A/[A,A].
    #[test]
    fn hh0_is_the_commutator_quotient(n in 1usize..7) {
        let a = group_algebra(&FiniteGroup::cyclic(n), q()).unwrap();
        let bundle = hochschild_cyclic_module(&a, 1).unwrap();
        prop_assert_eq!(hh(&bundle, 0).unwrap()[0], common::commutator_quotient_dim(&a));
    }
}
