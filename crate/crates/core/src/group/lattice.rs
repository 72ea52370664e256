use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{naming, FiniteGroup, DEFAULT_CAP};
use crate::error::{Error, Result};

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub name: String,
    /// Canonical representative: lexicographically minimal sorted element set.
    pub rep: Vec<usize>,
    #[serde(skip)]
    pub members: Vec<Vec<usize>>,
    pub normalizer: Vec<usize>,
    pub normalizer_class: usize,
    pub weyl_order: usize,
}

impl ClassInfo {
    pub fn order(&self) -> usize {
        self.rep.len()
    }
    pub fn class_size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes of subgroups with normalizers and the induced partial order.
#[derive(Clone, Debug)]
pub struct SubgroupClassLattice {
    group: FiniteGroup,
    classes: Vec<ClassInfo>,
    leq: Vec<Vec<bool>>,
    index: HashMap<Vec<usize>, usize>,
    by_name: HashMap<String, usize>,
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

impl SubgroupClassLattice {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        Self::with_cap(group, DEFAULT_CAP)
    }

    pub fn with_cap(group: &FiniteGroup, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::CapExceeded {
                cap,
                reached: group.order(),
            });
        }
        let g = group;
        // breadth-first closure enumeration
        let trivial = vec![0usize];
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(trivial.clone());
        let mut all: Vec<(Vec<usize>, Vec<usize>)> = vec![(trivial, Vec::new())];
        let mut head = 0;
        while head < all.len() {
            let (h, gens) = all[head].clone();
            let mut inside = vec![false; g.order()];
            for &x in &h {
                inside[x] = true;
            }
            for x in 0..g.order() {
                if inside[x] {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(x);
                let k = g.closure(&ng);
                // elements of k already absorbed by this extension
                if seen.insert(k.clone()) {
                    all.push((k, ng));
                }
            }
            head += 1;
        }
        let subgroups: Vec<Vec<usize>> = all.into_iter().map(|(h, _)| h).collect();

        let conjugate = |x: usize, h: &[usize]| -> Vec<usize> {
            let mut c: Vec<usize> = h.iter().map(|&a| g.conj(x, a)).collect();
            c.sort_unstable();
            c
        };
        let mut class_of_sub: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut reps: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
        for h in &subgroups {
            if class_of_sub.contains_key(h) {
                continue;
            }
            let mut members: Vec<Vec<usize>> = (0..g.order()).map(|x| conjugate(x, h)).collect();
            members.sort();
            members.dedup();
            let rep = members[0].clone();
            for m in &members {
                class_of_sub.insert(m.clone(), rep.clone());
            }
            reps.push((rep, members));
        }
        reps.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut index = HashMap::new();
        for (i, (_, members)) in reps.iter().enumerate() {
            for m in members {
                index.insert(m.clone(), i);
            }
        }
        let mut classes: Vec<ClassInfo> = reps
            .into_iter()
            .map(|(rep, members)| {
                let normalizer: Vec<usize> = (0..g.order())
                    .filter(|&x| conjugate(x, &rep) == rep)
                    .collect();
                let weyl_order = normalizer.len() / rep.len();
                ClassInfo {
                    name: String::new(),
                    rep,
                    members,
                    normalizer,
                    normalizer_class: 0,
                    weyl_order,
                }
            })
            .collect();
        for c in classes.iter_mut() {
            c.normalizer_class = index[&c.normalizer];
        }
        let n = classes.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if classes[i].order() <= classes[j].order()
                    && classes[j].order().is_multiple_of(classes[i].order())
                {
                    leq[i][j] = classes[i]
                        .members
                        .iter()
                        .any(|m| is_subset(m, &classes[j].rep));
                }
            }
        }
        let names = naming::class_names(g, &classes);
        let mut by_name = HashMap::new();
        for (c, nm) in classes.iter_mut().zip(names) {
            by_name.insert(nm.clone(), by_name.len());
            c.name = nm;
        }
        Ok(SubgroupClassLattice {
            group: g.clone(),
            classes,
            leq,
            index,
            by_name,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }
    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }
    pub fn subgroup_count(&self) -> usize {
        self.index.len()
    }
    /// Index of the whole group's class (always last).
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn find(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    /// Class of an arbitrary subgroup given as a sorted element list.
    pub fn class_of(&self, h: &[usize]) -> Result<usize> {
        self.index
            .get(h)
            .copied()
            .ok_or_else(|| Error::UnknownClass(format!("{h:?}")))
    }

    /// `(H) <= (K)`.
    pub fn leq(&self, h: usize, k: usize) -> bool {
        self.leq[h][k]
    }

    /// Number of conjugates of `K` containing the canonical `H`.
    pub fn n_containments(&self, h: usize, k: usize) -> usize {
        let hr = &self.classes[h].rep;
        self.classes[k]
            .members
            .iter()
            .filter(|m| is_subset(hr, m))
            .count()
    }

    pub fn conjugate(&self, x: usize, h: &[usize]) -> Vec<usize> {
        let mut c: Vec<usize> = h.iter().map(|&a| self.group.conj(x, a)).collect();
        c.sort_unstable();
        c
    }

    /// Element `x` with `x K x^{-1} = H`, for `H` in the class of `K` (both sorted).
    pub fn conjugator(&self, from: &[usize], to: &[usize]) -> Option<usize> {
        (0..self.group.order()).find(|&x| self.conjugate(x, from) == to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_leq(l: &SubgroupClassLattice, h: usize, k: usize) -> bool {
        let g = l.group();
        (0..g.order()).any(|x| is_subset(&l.conjugate(x, &l.class(h).rep), &l.class(k).rep))
    }

    #[test]
    fn z2_and_d4() {
        let l = SubgroupClassLattice::new(&FiniteGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(l.len(), 2);
        let l = SubgroupClassLattice::new(&FiniteGroup::dihedral(4).unwrap()).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.subgroup_count(), 10);
    }

    #[test]
    fn d4xz2_has_27_classes() {
        let l = SubgroupClassLattice::new(&FiniteGroup::from_name("d4xz2").unwrap()).unwrap();
        assert_eq!(l.len(), 27);
        assert_eq!(l.subgroup_count(), 35);
    }

    #[test]
    fn order_relation_matches_brute_force() {
        for name in ["d4", "d4xz2", "d3xz2", "z2xz2xz2", "d6"] {
            let l = SubgroupClassLattice::new(&FiniteGroup::from_name(name).unwrap()).unwrap();
            let n = l.len();
            let total: usize = l.classes().iter().map(|c| c.class_size()).sum();
            assert_eq!(total, l.subgroup_count());
            for i in 0..n {
                assert!(l.leq(i, i));
                let c = l.class(i);
                assert_eq!(c.weyl_order * c.order(), c.normalizer.len());
                assert!(is_subset(&c.rep, &c.normalizer));
                for j in 0..n {
                    assert_eq!(l.leq(i, j), brute_leq(&l, i, j), "{name} {i} {j}");
                    if i != j {
                        assert!(!(l.leq(i, j) && l.leq(j, i)));
                    }
                    for k in 0..n {
                        if l.leq(i, j) && l.leq(j, k) {
                            assert!(l.leq(i, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn containment_counts() {
        let l = SubgroupClassLattice::new(&FiniteGroup::dihedral(4).unwrap()).unwrap();
        for k in 0..l.len() {
            assert_eq!(l.n_containments(k, k), 1);
            assert_eq!(l.n_containments(0, k), l.class(k).class_size());
        }
        let d1 = l.find("D1").unwrap();
        let d2 = l.find("D2").unwrap();
        // brute force over the conjugates of D2
        let g = l.group();
        let mut conj: Vec<Vec<usize>> = (0..g.order())
            .map(|x| l.conjugate(x, &l.class(d2).rep))
            .collect();
        conj.sort();
        conj.dedup();
        let expected = conj
            .iter()
            .filter(|m| is_subset(&l.class(d1).rep, m))
            .count();
        assert_eq!(l.n_containments(d1, d2), expected);
    }
}
