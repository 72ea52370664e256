//! Conjugacy classes of `O(2) x Gamma1` subgroups of a given mode.

use std::collections::{BTreeMap, BTreeSet};

use super::amalgam::{quotient_group, AmalgamatedClass};
use super::subgroup::{O2Subgroup, Quotient};
use crate::burnside::generators;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupClassLattice};

/// Surjective homomorphisms `K -> target`, as target indices aligned with sorted `k`.
pub fn surjective_homs(g: &FiniteGroup, k: &[usize], target: &FiniteGroup) -> Vec<Vec<usize>> {
    if !k.len().is_multiple_of(target.order()) {
        return Vec::new();
    }
    let gens = generators(g, k);
    let pos = |x: usize| k.binary_search(&x).expect("closed subgroup");
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            (0..target.order())
                .filter(|&v| o.is_multiple_of(target.element_order(v)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    'outer: loop {
        let mut vals = vec![usize::MAX; k.len()];
        vals[pos(g.identity())] = target.identity();
        let mut queue = vec![g.identity()];
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop() {
            let vx = vals[pos(x)];
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let vy = target.mul(vx, choices[gi][idx[gi]]);
                let p = pos(y);
                if vals[p] == usize::MAX {
                    vals[p] = vy;
                    queue.push(y);
                } else if vals[p] != vy {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok && vals.iter().collect::<BTreeSet<_>>().len() == target.order() {
            out.push(vals);
        }
        for i in 0..idx.len() {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// Automorphisms of `L` induced by the O(2)-normalizer of the pair `(H, H0)`.
fn induced_automorphisms(h: O2Subgroup, l: Quotient) -> Vec<Vec<usize>> {
    let lg = quotient_group(l);
    let id: Vec<usize> = (0..lg.order()).collect();
    match (h, l) {
        (O2Subgroup::Cyclic(_), Quotient::Cyclic(n)) => {
            vec![id, (0..n).map(|i| (n - i) % n).collect()]
        }
        (O2Subgroup::Dihedral(_), Quotient::Dihedral(n)) => {
            let mut out = Vec::new();
            for c in 0..n {
                for sign in [1, n - 1] {
                    out.push(
                        (0..2 * n)
                            .map(|x| {
                                if x < n {
                                    (sign * x) % n
                                } else {
                                    n + (sign * (x - n) + c) % n
                                }
                            })
                            .collect(),
                    );
                }
            }
            out
        }
        _ => vec![id],
    }
}

/// O(2)-side pairs `(H, H0)` matching a finite quotient type in mode 1.
fn mode_one_sides(l: Quotient) -> Vec<(O2Subgroup, O2Subgroup)> {
    use O2Subgroup::*;
    match l {
        Quotient::Trivial => vec![(Cyclic(1), Cyclic(1)), (Dihedral(1), Dihedral(1))],
        Quotient::Cyclic(2) => vec![
            (Cyclic(2), Cyclic(1)),
            (Dihedral(1), Cyclic(1)),
            (Dihedral(2), Dihedral(1)),
        ],
        Quotient::Cyclic(n) => vec![(Cyclic(n), Cyclic(1))],
        Quotient::Dihedral(n) => vec![(Dihedral(n), Cyclic(1))],
    }
}

/// Candidate quotients of a group of order `n`.
fn candidate_quotients(n: usize) -> Vec<Quotient> {
    let mut out = vec![Quotient::Trivial];
    for d in 2..=n {
        if n.is_multiple_of(d) {
            out.push(Quotient::Cyclic(d));
            if d % 2 == 0 && d >= 4 {
                out.push(Quotient::Dihedral(d / 2));
            }
        }
    }
    out
}

/// Orbits of `psi: K -> L` under `N(K)` and induced automorphisms; returns lex-min representatives.
fn psi_orbits(
    g: &FiniteGroup,
    k: &[usize],
    normalizer: &[usize],
    homs: &[Vec<usize>],
    autos: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    let pos = |x: usize| k.binary_search(&x).expect("closed subgroup");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for h in homs {
        if seen.contains(h) {
            continue;
        }
        reps.push(h.clone());
        seen.insert(h.clone());
        let mut stack = vec![h.clone()];
        while let Some(cur) = stack.pop() {
            for &x in normalizer {
                let xi = g.inv(x);
                let moved: Vec<usize> = k.iter().map(|&a| cur[pos(g.conj(xi, a))]).collect();
                for a in autos {
                    let v: Vec<usize> = moved.iter().map(|&y| a[y]).collect();
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
        }
    }
    reps
}

fn side_rank(h: O2Subgroup, h0: O2Subgroup) -> u8 {
    let reflective = matches!(h, O2Subgroup::O2 | O2Subgroup::Dihedral(_));
    match (reflective, h == h0) {
        (false, _) => 0,
        (true, false) => 1,
        (true, true) => 2,
    }
}

/// Enumerate `Phi^m` for `O(2) x Gamma1`.
///
/// Mode 0 uses `SO(2)` and `O(2)`; mode 1 uses finite O(2)-subgroups with trivial rotation kernel
/// (or `D1` kernel); higher modes are folds of mode 1.
pub fn enumerate_mode_classes(
    lattice: &SubgroupClassLattice,
    m: usize,
) -> Result<Vec<AmalgamatedClass>> {
    if m >= 2 {
        return Ok(enumerate_mode_classes(lattice, 1)?
            .iter()
            .map(|c| c.fold(m))
            .collect());
    }
    let g = lattice.group();
    // (rank, h, h0, K index, K0 index, tag) -> class
    let mut out: BTreeMap<(u8, O2Subgroup, O2Subgroup, usize, usize, usize), AmalgamatedClass> =
        BTreeMap::new();
    for (ki, c) in lattice.classes().iter().enumerate() {
        let quotients = if m == 0 {
            vec![Quotient::Trivial, Quotient::Cyclic(2)]
        } else {
            candidate_quotients(c.order())
        };
        for l in quotients {
            let sides = if m == 0 {
                match l {
                    Quotient::Trivial => vec![
                        (O2Subgroup::SO2, O2Subgroup::SO2),
                        (O2Subgroup::O2, O2Subgroup::O2),
                    ],
                    _ => vec![(O2Subgroup::O2, O2Subgroup::SO2)],
                }
            } else {
                mode_one_sides(l)
            };
            let lg = quotient_group(l);
            let homs = surjective_homs(g, &c.rep, &lg);
            if homs.is_empty() {
                continue;
            }
            for (h, h0) in sides {
                let autos = induced_automorphisms(h, l);
                let reps = psi_orbits(g, &c.rep, &c.normalizer, &homs, &autos);
                let mut by_kernel: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
                for r in reps {
                    let kernel: Vec<usize> = c
                        .rep
                        .iter()
                        .zip(&r)
                        .filter(|(_, &v)| v == 0)
                        .map(|(&a, _)| a)
                        .collect();
                    by_kernel
                        .entry(lattice.class_of(&kernel)?)
                        .or_default()
                        .push(r);
                }
                for (k0, list) in by_kernel {
                    let several = list.len() > 1;
                    for (t, psi) in list.into_iter().enumerate() {
                        let cls = AmalgamatedClass {
                            h,
                            h0,
                            l,
                            k: c.name.clone(),
                            k0: lattice.class(k0).name.clone(),
                            tag: several.then_some(t + 1),
                            psi: Some(psi),
                        };
                        out.insert((side_rank(h, h0), h, h0, ki, k0, t), cls);
                    }
                }
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Look up a class by name in an enumerated list.
pub fn find_class<'a>(list: &'a [AmalgamatedClass], name: &str) -> Result<&'a AmalgamatedClass> {
    list.iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::UnknownClass(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(name: &str) -> SubgroupClassLattice {
        SubgroupClassLattice::new(&FiniteGroup::from_name(name).unwrap()).unwrap()
    }

    #[test]
    fn trivial_factor() {
        let lat = lattice("z1");
        let names: Vec<String> = enumerate_mode_classes(&lat, 0)
            .unwrap()
            .iter()
            .map(|c| c.name())
            .collect();
        assert_eq!(names, ["SO(2) x Z1", "O(2) x Z1"]);
        let one: Vec<String> = enumerate_mode_classes(&lat, 1)
            .unwrap()
            .iter()
            .map(|c| c.name())
            .collect();
        assert_eq!(one, ["Z1 x Z1", "D1 x Z1"]);
    }

    #[test]
    fn z2_factor() {
        // Z1, Z2 classes; index-2 pair Z2 -> Z2 only.
        let lat = lattice("z2");
        assert_eq!(enumerate_mode_classes(&lat, 0).unwrap().len(), 5);
        // trivial: 2 sides x 2 classes; Z2 quotient: 3 sides x 1
        assert_eq!(enumerate_mode_classes(&lat, 1).unwrap().len(), 7);
    }

    #[test]
    fn classes_pass_goursat_check() {
        let lat = lattice("d4xz2");
        for m in [0, 1] {
            for c in enumerate_mode_classes(&lat, m).unwrap() {
                c.goursat_check(&lat).unwrap();
                assert_eq!(AmalgamatedClass::parse(&c.name()).unwrap(), c);
            }
        }
    }
}
