//! Exact finite groups given by Cayley data.

mod characters;
mod lattice;
mod naming;
mod reps;
mod spec;

pub use characters::{real_irreducibles, CharacterTable, IrreducibleRepInfo, IrrepKind};
pub(crate) use lattice::is_subset;
pub use lattice::{ClassInfo, SubgroupClassLattice};
pub use reps::{fixed_dim, fixed_dim_complex, ComplexRep, RealRep};
pub use spec::GroupSpec;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default closure cap for generator-based constructions.
pub const DEFAULT_CAP: usize = 10_000;
const TABLE_LIMIT: usize = 1024;

/// Structural tag kept for naming subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Cyclic(usize),
    Dihedral(usize),
    Other(usize),
}

impl Factor {
    pub fn order(&self) -> usize {
        match *self {
            Factor::Cyclic(n) | Factor::Other(n) => n,
            Factor::Dihedral(n) => 2 * n,
        }
    }
}

#[derive(Clone, Debug)]
enum Law {
    Table(Vec<u32>),
    Cyclic(usize),
    Dihedral(usize),
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
    Perm {
        perms: Vec<Vec<u32>>,
        lookup: HashMap<Vec<u32>, usize>,
    },
}

/// A finite group on element indices `0..order`; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    law: Law,
    inv: Vec<usize>,
    names: Vec<String>,
    factors: Vec<Factor>,
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    fn finish(
        name: String,
        order: usize,
        law: Law,
        names: Vec<String>,
        factors: Vec<Factor>,
    ) -> Self {
        let mut g = FiniteGroup {
            name,
            order,
            law,
            inv: Vec::new(),
            names,
            factors,
        };
        if order <= TABLE_LIMIT && !matches!(g.law, Law::Table(_)) {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    t.push(g.mul(a, b) as u32);
                }
            }
            g.law = Law::Table(t);
        }
        g.inv = (0..order).map(|a| g.compute_inv(a)).collect();
        g
    }

    fn compute_inv(&self, a: usize) -> usize {
        match &self.law {
            Law::Cyclic(n) => (n - a) % n,
            Law::Dihedral(n) => {
                if a < *n {
                    (n - a) % n
                } else {
                    a
                }
            }
            Law::Product(x, y) => {
                let m = y.order;
                x.inv[a / m] * m + y.inv[a % m]
            }
            Law::Perm { perms, lookup } => {
                let p = &perms[a];
                let mut q = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    q[x as usize] = i as u32;
                }
                lookup[&q]
            }
            Law::Table(_) => (0..self.order).find(|&b| self.mul(a, b) == 0).unwrap_or(0),
        }
    }

    /// Cyclic group: element `i` is `r^i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadSpec("cyclic order must be positive".into()));
        }
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("r^{i}")
                }
            })
            .collect();
        Ok(Self::finish(
            format!("Z{n}"),
            n,
            Law::Cyclic(n),
            names,
            vec![Factor::Cyclic(n)],
        ))
    }

    /// Dihedral group of order `2n`: index `i` is `r^i`, index `n+i` is `r^i s`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadSpec("dihedral index must be positive".into()));
        }
        let mut names = Vec::with_capacity(2 * n);
        for e in 0..2 {
            for i in 0..n {
                names.push(match (i, e) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => format!("r^{i}"),
                    (0, _) => "s".to_string(),
                    _ => format!("r^{i}s"),
                });
            }
        }
        Ok(Self::finish(
            format!("D{n}"),
            2 * n,
            Law::Dihedral(n),
            names,
            vec![Factor::Dihedral(n)],
        ))
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let order = a.order * b.order;
        if order > DEFAULT_CAP {
            return Err(Error::CapExceeded {
                cap: DEFAULT_CAP,
                reached: order,
            });
        }
        let mut names = Vec::with_capacity(order);
        for x in &a.names {
            for y in &b.names {
                names.push(format!("({x},{y})"));
            }
        }
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        let name = format!("{}x{}", a.name, b.name);
        Ok(Self::finish(
            name,
            order,
            Law::Product(Box::new(a.clone()), Box::new(b.clone())),
            names,
            factors,
        ))
    }

    /// Closure of permutation generators (images of `0..degree`), with an order cap.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        let degree = gens.first().map(|g| g.len()).unwrap_or(0);
        for g in gens {
            if g.len() != degree {
                return Err(Error::BadSpec("generators act on different degrees".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::BadSpec(format!("not a permutation: {g:?}")));
                }
                seen[x] = true;
            }
        }
        let id: Vec<u32> = (0..degree as u32).collect();
        let gens: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as u32).collect())
            .collect();
        let mut perms = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id, 0usize);
        let mut head = 0;
        while head < perms.len() {
            for g in &gens {
                let p = compose(&perms[head], g);
                if !lookup.contains_key(&p) {
                    if perms.len() >= cap {
                        return Err(Error::CapExceeded {
                            cap,
                            reached: perms.len() + 1,
                        });
                    }
                    lookup.insert(p.clone(), perms.len());
                    perms.push(p);
                }
            }
            head += 1;
        }
        let order = perms.len();
        let names = perms
            .iter()
            .enumerate()
            .map(|(i, p)| if i == 0 { "e".into() } else { format!("{p:?}") })
            .collect();
        Ok(Self::finish(
            name.to_string(),
            order,
            Law::Perm { perms, lookup },
            names,
            vec![Factor::Other(order)],
        ))
    }

    /// Build from a spec string such as `d4xz2`, `z3`, `d5`.
    pub fn from_name(spec: &str) -> Result<Self> {
        GroupSpec::parse_name(spec)?.build()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.law {
            Law::Table(t) => t[a * self.order + b] as usize,
            Law::Cyclic(n) => (a + b) % n,
            Law::Dihedral(n) => {
                let n = *n;
                let (i, e) = (a % n, a / n);
                let (j, f) = (b % n, b / n);
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                k + n * (e ^ f)
            }
            Law::Product(x, y) => {
                let m = y.order;
                x.mul(a / m, b / m) * m + y.mul(a % m, b % m)
            }
            Law::Perm { perms, lookup } => lookup[&compose(&perms[a], &perms[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g a g^{-1}`.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv[g])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out
    }

    /// Check identity, inverse and associativity laws (exhaustive for small orders).
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::BadSpec(format!("identity law fails at {a}")));
            }
            if self.mul(a, self.inv[a]) != 0 || self.mul(self.inv[a], a) != 0 {
                return Err(Error::BadSpec(format!("no inverse for {a}")));
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::BadSpec(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // splitmix-style sequence; deterministic sample of 10^4 triples
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = s;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                ((z ^ (z >> 31)) % n as u64) as usize
            };
            for _ in 0..10_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(Error::BadSpec(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Conjugacy classes of elements: (class index of each element, class list).
    pub fn element_classes(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members: Vec<usize> = (0..self.order).map(|g| self.conj(g, a)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members);
        }
        (class_of, classes)
    }
}

fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    // (p q)(x) = p(q(x))
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        let g = FiniteGroup::direct_product(
            &FiniteGroup::dihedral(4).unwrap(),
            &FiniteGroup::cyclic(2).unwrap(),
        )
        .unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn laws_hold() {
        for g in [
            FiniteGroup::from_name("d4xz2").unwrap(),
            FiniteGroup::from_name("d6").unwrap(),
            FiniteGroup::from_name("z5xz3").unwrap(),
        ] {
            g.validate().unwrap();
        }
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let (r, s) = (1, 5);
        assert_eq!(g.element_order(r), 5);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^{-1}
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn permutation_closure_matches_s3() {
        let g = FiniteGroup::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_CAP)
            .unwrap();
        assert_eq!(g.order(), 6);
        g.validate().unwrap();
        let err =
            FiniteGroup::from_permutations("S5", &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]], 50)
                .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn large_cyclic_uses_formula() {
        let g = FiniteGroup::cyclic(5000).unwrap();
        assert_eq!(g.mul(4999, 2), 1);
        assert_eq!(g.exponent(), 5000);
    }
}
