#![allow(clippy::needless_range_loop)]

mod common;

use common::{all_subgroups, conjugacy_classes, mark};
use proptest::prelude::*;
use twisted_degree::burnside::{
    burnside_mul, generator_product, multiplication_table, BurnsideElement,
};
use twisted_degree::group::{FiniteGroup, SubgroupClassLattice};

#[test]
fn class_counts_match_brute_force() {
    for (name, expect) in [("z2", 2), ("d4", 8), ("d4xz2", 27), ("z2xz2", 5)] {
        let g = FiniteGroup::from_name(name).unwrap();
        let subs = all_subgroups(&g);
        let lat = SubgroupClassLattice::new(&g).unwrap();
        assert_eq!(conjugacy_classes(&g, &subs).len(), expect, "{name}");
        assert_eq!(lat.len(), expect, "{name}");
        assert_eq!(lat.subgroup_count(), subs.len(), "{name}");
    }
}

#[test]
fn products_respect_the_table_of_marks() {
    let g = FiniteGroup::from_name("d4xz2").unwrap();
    let lat = SubgroupClassLattice::new(&g).unwrap();
    let n = lat.len();
    let marks: Vec<Vec<i64>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|h| mark(&g, &lat.class(l).rep, &lat.class(h).rep))
                .collect()
        })
        .collect();
    for h in 0..n {
        for k in 0..n {
            let p = generator_product(&lat, h, k).unwrap();
            for l in 0..n {
                let lhs: i64 = p.iter().map(|&(t, c)| c * marks[l][t]).sum();
                assert_eq!(lhs, marks[l][h] * marks[l][k], "({h})({k}) at mark {l}");
            }
            // |Gamma/H| |Gamma/K| = sum n_L |Gamma/L|
            let total: i64 = p
                .iter()
                .map(|&(t, c)| c * (g.order() / lat.class(t).order()) as i64)
                .sum();
            assert_eq!(
                total,
                ((g.order() / lat.class(h).order()) * (g.order() / lat.class(k).order())) as i64
            );
        }
    }
}

#[test]
fn ring_axioms_exhaustively() {
    let g = FiniteGroup::from_name("d4xz2").unwrap();
    let lat = SubgroupClassLattice::new(&g).unwrap();
    let t = multiplication_table(&lat).unwrap();
    let n = lat.len();
    let times = |x: &[(usize, i64)], c: usize| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &(a, m) in x {
            for &(b, e) in &t[a][c] {
                v[b] += m * e;
            }
        }
        v
    };
    let top = lat.top();
    for h in 0..n {
        assert_eq!(t[h][top], vec![(h, 1)], "unit");
        for k in 0..n {
            assert_eq!(t[h][k], t[k][h]);
            for l in 0..n {
                // (HK)L = (KL)H
                let left = times(&t[h][k], l);
                let right = times(&t[k][l], h);
                assert_eq!(left, right, "({h})({k})({l})");
            }
        }
    }
}

fn element(names: &[String], coeffs: &[i64]) -> BurnsideElement {
    let mut e = BurnsideElement::zero();
    for (n, &c) in names.iter().zip(coeffs) {
        e.add_term(n.clone(), c);
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn distributivity(a in prop::collection::vec(-3i64..4, 8), b in prop::collection::vec(-3i64..4, 8), c in prop::collection::vec(-3i64..4, 8)) {
        let g = FiniteGroup::from_name("d4").unwrap();
        let lat = SubgroupClassLattice::new(&g).unwrap();
        let names: Vec<String> = lat.classes().iter().map(|c| c.name.clone()).collect();
        let (x, y, z) = (element(&names, &a), element(&names, &b), element(&names, &c));
        let lhs = burnside_mul(&lat, &x, &y.add(&z)).unwrap();
        let rhs = burnside_mul(&lat, &x, &y).unwrap().add(&burnside_mul(&lat, &x, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
