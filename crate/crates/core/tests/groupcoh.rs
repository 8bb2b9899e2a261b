use equicohom::groupcoh::{
    bar_oracle, cohomology, sylow_check, FiniteGroupSpec, NamedGroup, BAR_ORACLE_MAX_ORDER,
};
use equicohom::FinAbGroup;
use proptest::prelude::*;

/// Invariant-factor lists of every nontrivial abelian group of order <= `max`.
fn abelian_groups(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, remaining: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        // each new factor is a multiple of the previous one
        let step = prefix.last().copied().unwrap_or(1);
        let mut f = prefix.last().copied().unwrap_or(2);
        while f <= remaining {
            prefix.push(f);
            extend(prefix, remaining / f, out);
            prefix.pop();
            f += step;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max, &mut out);
    out
}

#[test]
fn census_of_groups_is_complete() {
    // number of abelian groups of each order 2..=32, summed
    let expected: usize = [
        1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3, 2, 1, 3, 2, 1, 1, 1, 7,
    ]
    .iter()
    .sum();
    assert_eq!(abelian_groups(32).len(), expected);
}

#[test]
fn chain_complexes_agree_with_closed_forms() {
    for m in abelian_groups(BAR_ORACLE_MAX_ORDER) {
        let g = FiniteGroupSpec::Abelian(m.clone());
        let table = cohomology(&g).unwrap();
        for i in 1..=3 {
            assert_eq!(
                bar_oracle(&g, i).unwrap(),
                *table.get(i).unwrap(),
                "{m:?} degree {i}"
            );
        }
    }
}

#[test]
fn dihedral_chain_complex() {
    let g = FiniteGroupSpec::Named(NamedGroup::D8);
    let table = cohomology(&g).unwrap();
    for i in 1..=3 {
        assert_eq!(bar_oracle(&g, i).unwrap(), *table.get(i).unwrap());
    }
}

#[test]
fn non_invariant_factor_input() {
    let a = cohomology(&FiniteGroupSpec::Abelian(vec![2, 3, 4])).unwrap();
    let b = cohomology(&FiniteGroupSpec::Abelian(vec![2, 12])).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.h2, FinAbGroup::cyclic(2));
}

proptest! {
    #[test]
    fn sylow_parts_match(m in proptest::collection::vec(2u64..40, 1..4)) {
        for i in 1..=3 {
            prop_assert!(sylow_check(&FiniteGroupSpec::Abelian(m.clone()), i).unwrap());
        }
    }

    #[test]
    fn orders_of_low_degrees(m in proptest::collection::vec(2u64..30, 0..4)) {
        let t = cohomology(&FiniteGroupSpec::Abelian(m.clone())).unwrap();
        let order: u128 = m.iter().map(|&x| x as u128).product();
        prop_assert_eq!(t.h1.order(), order);
        prop_assert!(t.h2.order() <= order);
    }
}
