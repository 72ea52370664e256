//! Multiplication in the Burnside ring `A(Gamma)`.

use std::collections::BTreeMap;

use super::sum::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupClassLattice};

pub(crate) fn left_cosets(g: &FiniteGroup, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
    // coset id per element, and one representative per coset
    let mut id = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if id[x] != usize::MAX {
            continue;
        }
        for &a in h {
            id[g.mul(x, a)] = reps.len();
        }
        reps.push(x);
    }
    (id, reps)
}

pub(crate) fn group_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for x in 0..g.order() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

pub(crate) fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Product of two generators `(H)(K)` as `(class index, coefficient)` pairs,
/// by tallying isotropy classes of the `Gamma`-orbits on `Gamma/H x Gamma/K`.
pub fn generator_product(
    lat: &SubgroupClassLattice,
    h: usize,
    k: usize,
) -> Result<Vec<(usize, i64)>> {
    if h >= lat.len() || k >= lat.len() {
        return Err(Error::UnknownClass(format!("class index {}", h.max(k))));
    }
    let g = lat.group();
    let hr = &lat.class(h).rep;
    let kr = &lat.class(k).rep;
    let (hid, hreps) = left_cosets(g, hr);
    let (kid, kreps) = left_cosets(g, kr);
    let nk = kreps.len();
    let n = hreps.len() * nk;
    let mut parent: Vec<usize> = (0..n).collect();
    for s in group_generators(g) {
        for (i, &x) in hreps.iter().enumerate() {
            for (j, &y) in kreps.iter().enumerate() {
                let a = i * nk + j;
                let b = hid[g.mul(s, x)] * nk + kid[g.mul(s, y)];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut tally: BTreeMap<usize, i64> = BTreeMap::new();
    for a in 0..n {
        if find(&mut parent, a) != a {
            continue;
        }
        let (x, y) = (hreps[a / nk], kreps[a % nk]);
        let stab = intersect(&lat.conjugate(x, hr), &lat.conjugate(y, kr));
        *tally.entry(lat.class_of(&stab)?).or_insert(0) += 1;
    }
    Ok(tally.into_iter().collect())
}

/// `table[h][k]` is the product of generators `h` and `k` as sparse `(class, coefficient)` pairs.
pub type ProductTable = Vec<Vec<Vec<(usize, i64)>>>;

/// Full multiplication table indexed by class.
pub fn multiplication_table(lat: &SubgroupClassLattice) -> Result<ProductTable> {
    (0..lat.len())
        .map(|h| {
            (0..lat.len())
                .map(|k| generator_product(lat, h, k))
                .collect()
        })
        .collect()
}

pub fn unit(lat: &SubgroupClassLattice) -> BurnsideElement {
    BurnsideElement::generator(lat.class(lat.top()).name.clone())
}

pub fn burnside_mul(
    lat: &SubgroupClassLattice,
    x: &BurnsideElement,
    y: &BurnsideElement,
) -> Result<BurnsideElement> {
    let mut out = BurnsideElement::zero();
    for (a, ca) in x.iter() {
        let i = lat.find(a)?;
        for (b, cb) in y.iter() {
            let j = lat.find(b)?;
            for (c, n) in generator_product(lat, i, j)? {
                out.add_term(lat.class(c).name.clone(), ca * cb * n);
            }
        }
    }
    Ok(out)
}

/// `x^m` by repeated multiplication.
pub fn burnside_pow(
    lat: &SubgroupClassLattice,
    x: &BurnsideElement,
    m: u32,
) -> Result<BurnsideElement> {
    if m > 64 {
        return Err(Error::InvalidArgument(format!(
            "Burnside power {m} exceeds guard 64"
        )));
    }
    let mut acc = unit(lat);
    for _ in 0..m {
        acc = burnside_mul(lat, &acc, x)?;
    }
    Ok(acc)
}
