//! Twisted subgroups `K^{theta,l} = {(g, z) : theta(g) = z^l}` of `Gamma x S^1`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::circle::{CircleElement, CircleHomomorphism};
use crate::error::{round_exact, Error, Result};
use crate::group::{gcd, FiniteGroup, IrreducibleRepInfo, SubgroupClassLattice};

/// Conjugacy class of a twisted subgroup: lattice class, twist index, fold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistedClass {
    pub class: usize,
    pub twist: usize,
    pub l: u32,
}

/// A homomorphism `K -> Z_E` on a class representative, up to `N(K)`.
#[derive(Clone, Debug)]
pub struct Twist {
    /// Numerators over the exponent `E`, aligned with the sorted representative.
    pub values: Vec<u32>,
    pub kernel: Vec<usize>,
    pub kernel_name: String,
    /// Order of the image.
    pub image: u32,
    /// `N(K, theta)`: normalizer elements fixing theta.
    pub normalizer: Vec<usize>,
    /// Disambiguation index when several twists share kernel and image.
    pub tag: Option<usize>,
}

/// Subgroup lattice of `Gamma` enriched with all twists.
#[derive(Clone, Debug)]
pub struct TwistedLattice {
    lattice: SubgroupClassLattice,
    e: u32,
    twists: Vec<Vec<Twist>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
    by_key: HashMap<String, (usize, usize)>,
    subgroups: Vec<Vec<usize>>,
    sub_homs: HashMap<Vec<usize>, Vec<Vec<u32>>>,
}

pub(crate) fn generators(g: &FiniteGroup, k: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in k {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// All homomorphisms `K -> Z_e` as value vectors aligned with sorted `k`, sorted.
pub fn homomorphisms(g: &FiniteGroup, k: &[usize], e: u32) -> Vec<Vec<u32>> {
    let gens = generators(g, k);
    let pos = |x: usize| k.binary_search(&x).expect("closed subgroup");
    let choices: Vec<Vec<u32>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x) as u32;
            (0..e).filter(|v| (v * o).is_multiple_of(e)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    'outer: loop {
        let gv: Vec<u32> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mut vals = vec![u32::MAX; k.len()];
        vals[pos(g.identity())] = 0;
        let mut queue = vec![g.identity()];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            let vx = vals[pos(x)];
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let vy = (vx + gv[gi]) % e;
                let p = pos(y);
                if vals[p] == u32::MAX {
                    vals[p] = vy;
                    queue.push(y);
                } else if vals[p] != vy {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            out.push(vals);
        }
        // next tuple
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

/// `theta o conj_x^{-1}` on `x K x^{-1}`, aligned with its sorted element list.
fn transport(g: &FiniteGroup, k: &[usize], vals: &[u32], x: usize) -> (Vec<usize>, Vec<u32>) {
    let mut pairs: Vec<(usize, u32)> = k
        .iter()
        .zip(vals)
        .map(|(&a, &v)| (g.conj(x, a), v))
        .collect();
    pairs.sort_unstable();
    pairs.into_iter().unzip()
}

fn format_name(k: &str, tw: &Twist, l: u32) -> String {
    let base = if tw.image == 1 {
        format!("{k} x Z{l}")
    } else {
        format!(
            "{k}^{{{}}} x_{{Z{}}}^{{Z{l}}} Z{}",
            tw.kernel_name,
            tw.image,
            l * tw.image
        )
    };
    match tw.tag {
        Some(r) => format!("{base}#{r}"),
        None => base,
    }
}

impl TwistedLattice {
    pub fn new(lattice: SubgroupClassLattice) -> Result<Self> {
        let g = lattice.group().clone();
        let e = g.exponent() as u32;
        let mut twists = Vec::new();
        let mut lookup = Vec::new();
        let mut by_key = HashMap::new();
        for (ci, c) in lattice.classes().iter().enumerate() {
            let homs = homomorphisms(&g, &c.rep, e);
            let mut map: HashMap<Vec<u32>, usize> = HashMap::new();
            let mut list: Vec<Twist> = Vec::new();
            for h in &homs {
                if map.contains_key(h) {
                    continue;
                }
                let idx = list.len();
                let mut stab = Vec::new();
                for &x in &c.normalizer {
                    let (_, v) = transport(&g, &c.rep, h, x);
                    if &v == h {
                        stab.push(x);
                    }
                    map.insert(v, idx);
                }
                let kernel: Vec<usize> = c
                    .rep
                    .iter()
                    .zip(h)
                    .filter(|(_, &v)| v == 0)
                    .map(|(&a, _)| a)
                    .collect();
                let kernel_name = lattice.class(lattice.class_of(&kernel)?).name.clone();
                let d = h
                    .iter()
                    .fold(e, |acc, &v| gcd(acc as usize, v as usize) as u32);
                list.push(Twist {
                    values: h.clone(),
                    kernel,
                    kernel_name,
                    image: e / d,
                    normalizer: stab,
                    tag: None,
                });
            }
            // homs are sorted, so the first hit of each orbit is its lex-min member
            let mut groups: HashMap<(String, u32), Vec<usize>> = HashMap::new();
            for (i, t) in list.iter().enumerate() {
                groups
                    .entry((t.kernel_name.clone(), t.image))
                    .or_default()
                    .push(i);
            }
            for ids in groups.values() {
                if ids.len() > 1 {
                    for (r, &i) in ids.iter().enumerate() {
                        list[i].tag = Some(r + 1);
                    }
                }
            }
            for (ti, t) in list.iter().enumerate() {
                by_key.insert(format_name(&c.name, t, 1), (ci, ti));
            }
            twists.push(list);
            lookup.push(map);
        }
        let mut subgroups: Vec<Vec<usize>> = lattice
            .classes()
            .iter()
            .flat_map(|c| c.members.iter().cloned())
            .collect();
        subgroups.sort();
        let sub_homs = subgroups
            .iter()
            .map(|s| (s.clone(), homomorphisms(&g, s, e)))
            .collect();
        Ok(TwistedLattice {
            lattice,
            e,
            twists,
            lookup,
            by_key,
            subgroups,
            sub_homs,
        })
    }

    pub fn from_group(g: &FiniteGroup) -> Result<Self> {
        Self::new(SubgroupClassLattice::new(g)?)
    }

    pub fn lattice(&self) -> &SubgroupClassLattice {
        &self.lattice
    }
    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }
    /// Common denominator of all twist values (the exponent of `Gamma`).
    pub fn exponent(&self) -> u32 {
        self.e
    }
    pub fn twists(&self, class: usize) -> &[Twist] {
        &self.twists[class]
    }
    pub fn twist(&self, t: TwistedClass) -> &Twist {
        &self.twists[t.class][t.twist]
    }

    /// Every twisted class with fold `l`.
    pub fn all_with_fold(&self, l: u32) -> Vec<TwistedClass> {
        let mut v = Vec::new();
        for (c, ts) in self.twists.iter().enumerate() {
            for t in 0..ts.len() {
                v.push(TwistedClass {
                    class: c,
                    twist: t,
                    l,
                });
            }
        }
        v
    }

    pub fn name(&self, t: TwistedClass) -> String {
        format_name(&self.lattice.class(t.class).name, self.twist(t), t.l)
    }

    pub fn parse(&self, name: &str) -> Result<TwistedClass> {
        let err = || Error::Parse(name.to_string());
        let (body, tag) = match name.rsplit_once('#') {
            Some((b, r)) => (b, Some(r)),
            None => (name, None),
        };
        let toks: Vec<&str> = body.split(' ').collect();
        let (key, l) = match toks.as_slice() {
            [k, "x", zl] => {
                let l: u32 = zl
                    .strip_prefix('Z')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(err)?;
                (format!("{k} x Z1"), l)
            }
            [k, mid, _] => {
                let (n, l) = mid
                    .strip_prefix("x_{Z")
                    .and_then(|s| s.split_once("}^{Z"))
                    .and_then(|(n, l)| {
                        Some((n.to_string(), l.strip_suffix('}')?.parse::<u32>().ok()?))
                    })
                    .ok_or_else(err)?;
                let n: u32 = n.parse().map_err(|_| err())?;
                (format!("{k} x_{{Z{n}}}^{{Z1}} Z{n}"), l)
            }
            _ => return Err(err()),
        };
        let key = match tag {
            Some(r) => format!("{key}#{r}"),
            None => key,
        };
        let &(class, twist) = self
            .by_key
            .get(&key)
            .ok_or_else(|| Error::UnknownClass(name.to_string()))?;
        if l == 0 {
            return Err(err());
        }
        let t = TwistedClass { class, twist, l };
        if self.name(t) != name {
            return Err(err());
        }
        Ok(t)
    }

    /// Canonical class of `(K, theta, l)` with theta given as circle values aligned with sorted `k`.
    pub fn canonical(&self, k: &[usize], theta: &[CircleElement], l: u32) -> Result<TwistedClass> {
        if l == 0 {
            return Err(Error::InvalidArgument("fold must be positive".into()));
        }
        let mut vals = Vec::with_capacity(theta.len());
        for c in theta {
            if !self.e.is_multiple_of(c.q) {
                return Err(Error::NotHomomorphism(format!(
                    "value {c} has order not dividing the exponent"
                )));
            }
            vals.push(c.over(self.e));
        }
        let hom = CircleHomomorphism {
            domain: k.to_vec(),
            values: theta.to_vec(),
        };
        hom.check(self.group())?;
        self.canonical_raw(k, &vals, l)
    }

    /// As [`canonical`](Self::canonical) with numerators over the exponent.
    pub fn canonical_raw(&self, k: &[usize], vals: &[u32], l: u32) -> Result<TwistedClass> {
        let class = self.lattice.class_of(k)?;
        let rep = &self.lattice.class(class).rep;
        let x = self
            .lattice
            .conjugator(k, rep)
            .ok_or_else(|| Error::UnknownClass(format!("{k:?}")))?;
        let (_, v) = transport(self.group(), k, vals, x);
        let twist = *self.lookup[class]
            .get(&v)
            .ok_or_else(|| Error::NotHomomorphism("values do not define a homomorphism".into()))?;
        Ok(TwistedClass { class, twist, l })
    }

    pub fn homomorphism(&self, t: TwistedClass) -> CircleHomomorphism {
        let tw = self.twist(t);
        CircleHomomorphism {
            domain: self.lattice.class(t.class).rep.clone(),
            values: tw
                .values
                .iter()
                .map(|&v| CircleElement::new(v as i64, self.e))
                .collect(),
        }
    }

    /// The finite subgroup realizing the class inside `Gamma x Z_M`, `M = l * E`.
    /// Returns pairs `(gamma, w)` meaning `(gamma, exp(2 pi i w / M))`.
    pub fn realize(&self, t: TwistedClass) -> (u32, Vec<(usize, u32)>) {
        let m = t.l * self.e;
        (m, self.realize_in(t, m))
    }

    /// Realization inside `Gamma x Z_m`; `m` must be a multiple of `l * E`.
    pub fn realize_in(&self, t: TwistedClass, m: u32) -> Vec<(usize, u32)> {
        assert_eq!(m % (t.l * self.e), 0);
        let rep = &self.lattice.class(t.class).rep;
        let vals = &self.twist(t).values;
        let scale = m / self.e;
        let mut out = Vec::new();
        for (&a, &v) in rep.iter().zip(vals) {
            for w in 0..m {
                if (t.l as u64 * w as u64) % m as u64 == (v * scale) as u64 % m as u64 {
                    out.push((a, w));
                }
            }
        }
        out
    }

    /// Order of `W(H)/S^1 = N(K, theta)/K`.
    pub fn weyl_order(&self, t: TwistedClass) -> usize {
        self.twist(t).normalizer.len() / self.lattice.class(t.class).order()
    }

    /// Pointwise containment of `(k, a, la)` in `(m, b, lb)` (sets sorted, values aligned).
    fn contains(&self, k: &[usize], a: &[u32], la: u32, m: &[usize], b: &[u32], lb: u32) -> bool {
        if !lb.is_multiple_of(la) {
            return false;
        }
        let q = lb / la;
        k.iter().zip(a).all(|(x, &v)| match m.binary_search(x) {
            Ok(i) => b[i] == (v * q) % self.e,
            Err(_) => false,
        })
    }

    /// Twisted partial order `(H) <= (H')`.
    pub fn leq(&self, h: TwistedClass, k: TwistedClass) -> bool {
        if !k.l.is_multiple_of(h.l) || !self.lattice.leq(h.class, k.class) {
            return false;
        }
        let g = self.group();
        let hr = &self.lattice.class(h.class).rep;
        let hv = &self.twist(h).values;
        let kr = &self.lattice.class(k.class).rep;
        let kv = &self.twist(k).values;
        (0..g.order()).any(|x| {
            let (s, v) = transport(g, hr, hv, x);
            self.contains(&s, &v, h.l, kr, kv, k.l)
        })
    }

    /// Number of conjugates of `H'` containing the canonical `H`.
    pub fn n_containments(&self, h: TwistedClass, k: TwistedClass) -> usize {
        if !k.l.is_multiple_of(h.l) || !self.lattice.leq(h.class, k.class) {
            return 0;
        }
        let g = self.group();
        let hr = &self.lattice.class(h.class).rep;
        let hv = &self.twist(h).values;
        let kr = &self.lattice.class(k.class).rep;
        let kv = &self.twist(k).values;
        let mut seen: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for x in 0..g.order() {
            let c = transport(g, kr, kv, x);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.iter()
            .filter(|(s, v)| self.contains(hr, hv, h.l, s, v, k.l))
            .count()
    }

    fn fixed_dim_raw(
        &self,
        rep: &IrreducibleRepInfo,
        fold: u32,
        k: &[usize],
        vals: &[u32],
        l: u32,
    ) -> Result<usize> {
        if !fold.is_multiple_of(l) {
            return Ok(0);
        }
        let q = fold / l;
        let mut s = Complex64::new(0.0, 0.0);
        for (&a, &v) in k.iter().zip(vals) {
            let ph = 2.0 * std::f64::consts::PI * ((v as u64 * q as u64) % self.e as u64) as f64
                / self.e as f64;
            s += Complex64::from_polar(1.0, ph) * rep.chi(a);
        }
        s /= k.len() as f64;
        if s.im.abs() > 1e-6 {
            return Err(Error::NonIntegral {
                context: "twisted fixed dimension".into(),
                value: s.im,
            });
        }
        let d = round_exact(s.re, 1e-6, "twisted fixed dimension")?;
        Ok(d.max(0) as usize)
    }

    /// Complex dimension of the fixed space of `t` in `V_{fold, rep}`.
    pub fn fixed_dim(&self, rep: &IrreducibleRepInfo, fold: u32, t: TwistedClass) -> Result<usize> {
        let rep_set = &self.lattice.class(t.class).rep;
        self.fixed_dim_raw(rep, fold, rep_set, &self.twist(t).values, t.l)
    }

    /// Twisted orbit types of `V_{fold, rep}`: every class with a fixed vector not fixed by a larger twisted subgroup.
    pub fn orbit_types(&self, rep: &IrreducibleRepInfo, fold: u32) -> Result<Vec<OrbitType>> {
        if fold == 0 {
            return Err(Error::InvalidArgument("fold must be positive".into()));
        }
        let mut out = Vec::new();
        for t in self.all_with_fold(fold) {
            let d = self.fixed_dim(rep, fold, t)?;
            if d == 0 {
                continue;
            }
            let rep_set = &self.lattice.class(t.class).rep;
            let vals = &self.twist(t).values;
            let mut strict = true;
            'sup: for s in &self.subgroups {
                if s.len() <= rep_set.len() || !crate::group::is_subset(rep_set, s) {
                    continue;
                }
                for phi in &self.sub_homs[s] {
                    if !self.contains(rep_set, vals, 1, s, phi, 1) {
                        continue;
                    }
                    if self.fixed_dim_raw(rep, fold, s, phi, fold)? == d {
                        strict = false;
                        break 'sup;
                    }
                }
            }
            if strict {
                out.push(OrbitType {
                    class: t,
                    name: self.name(t),
                    fixed_dim: d,
                    weyl_order: self.weyl_order(t),
                    maximal: false,
                });
            }
        }
        let n = out.len();
        for i in 0..n {
            out[i].maximal = !(0..n).any(|j| j != i && self.leq(out[i].class, out[j].class));
        }
        Ok(out)
    }
}

/// One twisted orbit type in an irreducible `Gamma x S^1` representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitType {
    #[serde(skip)]
    pub class: TwistedClass,
    pub name: String,
    /// Complex dimension of the fixed subspace.
    pub fixed_dim: usize,
    /// `|W(H)/S^1|`.
    pub weyl_order: usize,
    pub maximal: bool,
}

impl fmt::Display for TwistedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.class, self.twist, self.l)
    }
}
