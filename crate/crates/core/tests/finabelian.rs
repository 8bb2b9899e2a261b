use std::collections::BTreeMap;

use equicohom::finabelian::{
    classify_by_order_census, cokernel, element_order, for_each_element, image, kernel, quotient,
    snf, CyclicSum, FinAbGroup, IntMatrixHom, Subgroup,
};
use num_integer::Integer;
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0;
    for j in 0..n {
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] * det(&minor);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
fn minor_gcd(a: &[Vec<i64>], cols: usize, k: usize) -> i128 {
    let mut g = 0i128;
    for rows in subsets(a.len(), k) {
        for cs in subsets(cols, k) {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect())
                .collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        (
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r),
            Just(c),
        )
    })
}

fn factors() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=12, 0..4)
}

proptest! {
    #[test]
    fn smith_diagonal_divides_and_matches_minors((a, cols) in matrix()) {
        let s = snf(&a, cols).unwrap();
        let d = &s.diagonal;
        for w in d.windows(2) {
            if w[1] != 0 {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
        let mut prod = 1i128;
        for k in 1..=d.len() {
            prod *= d[k - 1] as i128;
            prop_assert_eq!(prod, minor_gcd(&a, cols, k));
        }
    }

    #[test]
    fn normal_form_is_idempotent(f in factors()) {
        let g = FinAbGroup::from_cyclic_factors(&f).unwrap();
        let order: u128 = f.iter().map(|&x| x as u128).product();
        prop_assert_eq!(g.order(), order);
        prop_assert_eq!(FinAbGroup::from_cyclic_factors(g.invariant_factors()).unwrap(), g.clone());
        let inv = g.invariant_factors();
        prop_assert!(inv.iter().all(|&x| x >= 2));
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn census_recovers_structure(f in proptest::collection::vec(2u64..=12, 0..4)) {
        let g = FinAbGroup::from_cyclic_factors(&f).unwrap();
        prop_assume!(g.order() <= 200);
        let moduli: Vec<i64> = f.iter().map(|&x| x as i64).collect();
        let mut census = BTreeMap::new();
        for_each_element(&moduli, |x| *census.entry(element_order(x, &moduli)).or_insert(0u64) += 1);
        prop_assert_eq!(classify_by_order_census(&census).unwrap(), g);
    }

    #[test]
    fn kernel_image_orders(
        src in proptest::collection::vec(2u64..=8, 1..4),
        tgt in proptest::collection::vec(2u64..=8, 1..4),
        seed in proptest::collection::vec(-6i64..=6, 16),
    ) {
        // Make each entry well defined by scaling it into the allowed subgroup.
        let rows: Vec<Vec<i64>> = tgt
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                src.iter()
                    .enumerate()
                    .map(|(j, &s)| seed[(i * 4 + j) % 16] * (t / t.gcd(&s)) as i64)
                    .collect()
            })
            .collect();
        let h = IntMatrixHom::new(CyclicSum::new(src.clone()), CyclicSum::new(tgt.clone()), rows).unwrap();
        let (ker, sub) = kernel(&h).unwrap();
        let im = image(&h).unwrap();
        let co = cokernel(&h).unwrap();
        let s: u128 = src.iter().map(|&x| x as u128).product();
        let t: u128 = tgt.iter().map(|&x| x as u128).product();
        prop_assert_eq!(ker.order() * im.order(), s);
        prop_assert_eq!(im.order() * co.order(), t);
        for g in sub.generators() {
            prop_assert!(h.apply(g).iter().all(|&v| v == 0));
        }
        prop_assert_eq!(quotient(h.source(), &sub).unwrap(), im);
    }
}

#[test]
fn subgroup_structure_and_membership() {
    let amb = CyclicSum::new(vec![4, 6]);
    let sub = Subgroup::new(amb.clone(), vec![vec![2, 3]]).unwrap();
    assert_eq!(sub.structure().unwrap(), FinAbGroup::cyclic(2));
    assert!(sub.contains(&[2, 3]));
    assert!(sub.contains(&[0, 0]));
    assert!(!sub.contains(&[1, 0]));
    assert_eq!(quotient(&amb, &sub).unwrap(), FinAbGroup::cyclic(12));
}

#[test]
fn free_coordinates() {
    // Z -> Z/6, 1 -> 2: kernel is infinite, image Z/3.
    let h = IntMatrixHom::new(
        CyclicSum::new(vec![0]),
        CyclicSum::new(vec![6]),
        vec![vec![2]],
    )
    .unwrap();
    assert_eq!(image(&h).unwrap(), FinAbGroup::cyclic(3));
    assert!(kernel(&h).is_err());
    assert_eq!(cokernel(&h).unwrap(), FinAbGroup::cyclic(2));
}
