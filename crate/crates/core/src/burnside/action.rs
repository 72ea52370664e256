//! The `A(Gamma)`-module structure on twisted classes, and folding.

use std::collections::BTreeMap;

use super::ring::find;
use super::sum::{BurnsideElement, TwistedModuleElement};
use super::twisted::{TwistedClass, TwistedLattice};
use crate::error::{Error, Result};

/// Orbit tally of `K x Z_m` on `(Gamma x Z_m)/H_m`, converted back to twisted classes.
fn discretized_product(
    tl: &TwistedLattice,
    k: usize,
    h: TwistedClass,
    m: u32,
) -> Result<Vec<(TwistedClass, i64)>> {
    let g = tl.group();
    let e = tl.exponent();
    let mu = m as usize;
    let n = g.order() * mu;
    let mul = |a: usize, b: usize| g.mul(a / mu, b / mu) * mu + (a % mu + b % mu) % mu;
    let hm: Vec<usize> = tl
        .realize_in(h, m)
        .into_iter()
        .map(|(a, w)| a * mu + w as usize)
        .collect();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            for &y in &hm {
                coset[mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
    }
    let kr = &tl.lattice().class(k).rep;
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![g.identity()];
    for &x in kr {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    let mut gens: Vec<usize> = gens.iter().map(|&x| x * mu).collect();
    gens.push(1 % n); // (e, 1)
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    for &s in &gens {
        for (i, &x) in reps.iter().enumerate() {
            let j = coset[mul(s, x)];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut tally: BTreeMap<TwistedClass, i64> = BTreeMap::new();
    for i in 0..reps.len() {
        if find(&mut parent, i) != i {
            continue;
        }
        let x = reps[i] / mu;
        // stabilizer: (x a x^-1, z) for (a, z) in H_m with x a x^-1 in K
        let mut stab: Vec<(usize, u32)> = tl
            .realize_in(h, m)
            .into_iter()
            .map(|(a, z)| (g.conj(x, a), z))
            .filter(|(b, _)| kr.binary_search(b).is_ok())
            .collect();
        stab.sort_unstable();
        let lp = stab.iter().filter(|(b, _)| *b == g.identity()).count() as u32;
        let mut ks: Vec<usize> = Vec::new();
        let mut vals: Vec<u32> = Vec::new();
        for &(b, z) in &stab {
            if ks.last() == Some(&b) {
                continue;
            }
            let num = (lp as u64 * z as u64 % m as u64) * e as u64;
            if !num.is_multiple_of(m as u64) {
                return Err(Error::Unstable(format!(
                    "isotropy value {z}/{m} is not an E-th root"
                )));
            }
            ks.push(b);
            vals.push((num / m as u64) as u32 % e);
        }
        *tally.entry(tl.canonical_raw(&ks, &vals, lp)?).or_insert(0) += 1;
    }
    Ok(tally.into_iter().collect())
}

/// `(K) . (H)` on generators; the circle is discretized to `Z_M` with `M = 2 l E`
/// and the result is accepted only if `Z_{2M}` gives the same tally.
pub fn action_generator(
    tl: &TwistedLattice,
    k: usize,
    h: TwistedClass,
) -> Result<Vec<(TwistedClass, i64)>> {
    if k >= tl.lattice().len() {
        return Err(Error::UnknownClass(format!("class index {k}")));
    }
    let m = 2 * h.l * tl.exponent();
    let a = discretized_product(tl, k, h, m)?;
    let b = discretized_product(tl, k, h, 2 * m)?;
    if a != b {
        return Err(Error::Unstable(format!(
            "({}) . ({}) differs between Z_{m} and Z_{}",
            tl.lattice().class(k).name,
            tl.name(h),
            2 * m
        )));
    }
    Ok(a)
}

/// Bilinear extension of the generator action.
pub fn module_action(
    tl: &TwistedLattice,
    a: &BurnsideElement,
    x: &TwistedModuleElement,
) -> Result<TwistedModuleElement> {
    let mut out = TwistedModuleElement::zero();
    for (kn, ck) in a.iter() {
        let k = tl.lattice().find(kn)?;
        for (hn, ch) in x.iter() {
            let h = tl.parse(hn)?;
            for (t, n) in action_generator(tl, k, h)? {
                out.add_term(tl.name(t), ck * ch * n);
            }
        }
    }
    Ok(out)
}

pub fn fold_class(t: TwistedClass, k: u32) -> TwistedClass {
    TwistedClass { l: t.l * k, ..t }
}

/// `Psi_k`: `(K^{theta,l}) -> (K^{theta,kl})`, extended linearly.
pub fn fold(tl: &TwistedLattice, x: &TwistedModuleElement, k: u32) -> Result<TwistedModuleElement> {
    if k == 0 {
        return Err(Error::InvalidArgument("fold index must be positive".into()));
    }
    let mut out = TwistedModuleElement::zero();
    for (n, c) in x.iter() {
        out.add_term(tl.name(fold_class(tl.parse(n)?, k)), c);
    }
    Ok(out)
}
