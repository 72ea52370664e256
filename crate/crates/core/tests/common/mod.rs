//! Oracles shared by the integration tests, written independently of the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twisted_degree::group::{FiniteGroup, SubgroupClassLattice};
use twisted_degree::spectral::{AffineModel, Branch, CrossingSet};

/// All subgroups as closures of at most three generators (enough for every group used here).
pub fn all_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                out.insert(g.closure(&[a, b, c]));
            }
        }
    }
    out
}

pub fn conjugacy_classes(g: &FiniteGroup, subs: &BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for h in subs {
        if seen.contains(h) {
            continue;
        }
        for x in 0..g.order() {
            let mut c: Vec<usize> = h.iter().map(|&a| g.conj(x, a)).collect();
            c.sort();
            seen.insert(c);
        }
        reps.push(h.clone());
    }
    reps
}

/// `phi_L(Gamma/H)`: cosets `gH` fixed by `L`.
pub fn mark(g: &FiniteGroup, l: &[usize], h: &[usize]) -> i64 {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        for &a in h {
            seen[g.mul(x, a)] = true;
        }
        let xi = g.inv(x);
        if l.iter()
            .all(|&y| h.binary_search(&g.mul(g.mul(xi, y), x)).is_ok())
        {
            count += 1;
        }
    }
    count
}

/// `|Phi^0|` from scratch: `SO(2) x K`, `O(2) x K`, and one `O(2)^{SO(2)} x_{Z2}^{K0} K` per
/// index-two subgroup `K0 < K` up to conjugation by `N(K)`.
pub fn mode_zero_count(lat: &SubgroupClassLattice) -> usize {
    let g = lat.group();
    let mut n = 2 * lat.len();
    for c in lat.classes() {
        let k = &c.rep;
        if k.len() % 2 != 0 {
            continue;
        }
        let mut halves = BTreeSet::new();
        // every subgroup of D4 x Z2 is generated by three elements
        for &a in k {
            for &b in k {
                for &c in k {
                    let h = g.closure(&[a, b, c]);
                    if 2 * h.len() == k.len() {
                        halves.insert(h);
                    }
                }
            }
        }
        let normalizer: Vec<usize> = (0..g.order())
            .filter(|&x| k.iter().all(|&a| k.binary_search(&g.conj(x, a)).is_ok()))
            .collect();
        let mut seen = BTreeSet::new();
        for h in &halves {
            if seen.contains(h) {
                continue;
            }
            n += 1;
            for &x in &normalizer {
                let mut c: Vec<usize> = h.iter().map(|&a| g.conj(x, a)).collect();
                c.sort();
                seen.insert(c);
            }
        }
    }
    n
}

/// Sign of `J_n(x)` from its power series, or `None` when the rounding and truncation bound
/// does not decide it. Past `k > x^2 / 4` the terms alternate with decreasing size, so the
/// first omitted term bounds the tail.
pub fn bessel_sign(n: u32, x: f64) -> Option<f64> {
    let h = x / 2.0;
    let mut term = h.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let (mut sum, mut abs) = (0.0, 0.0);
    let mut k = 0u32;
    loop {
        sum += term;
        abs += term.abs();
        k += 1;
        let next = -term * h * h / (k as f64 * (k + n) as f64);
        if (k as f64) > h * h && next.abs() < 1e-30 {
            let bound = next.abs() + 4.0 * f64::EPSILON * abs;
            return (sum.abs() > bound).then(|| sum.signum());
        }
        term = next;
    }
}

pub const LABELS: [&str; 3] = ["A", "B", "C"];

/// A random affine model together with a center where at least one branch crosses.
pub fn instance(rng: &mut ChaCha8Rng) -> (AffineModel, f64, f64) {
    let a = rng.gen_range(0.5..3.0);
    let b = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let alpha0 = rng.gen_range(0.5..4.0);
    let mut branches = Vec::new();
    for i in 0..rng.gen_range(1..6) {
        let shift = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(-1.0..a / 2.0)
        };
        // half of the branches cross at alpha0, the rest somewhere else
        let at = if i == 0 || rng.gen_bool(0.5) {
            alpha0
        } else {
            rng.gen_range(0.2..6.0)
        };
        let s = at * (a - shift);
        let label = LABELS[rng.gen_range(0..3)];
        let mult = rng.gen_range(1..4);
        if !branches
            .iter()
            .any(|b: &Branch| b.label == label && b.shift == shift && b.s == s)
        {
            branches.push(Branch {
                s,
                label: label.into(),
                mult,
                shift,
            });
        }
    }
    let m = AffineModel::new(a, b, branches).unwrap();
    (m, alpha0, alpha0 * b.abs())
}

/// Closed form: every branch through `i beta` at `alpha0` moves left to right, so `t = -mult`.
pub fn oracle(m: &AffineModel, alpha0: f64) -> BTreeMap<String, i64> {
    let mut t: BTreeMap<String, i64> = m.branches.iter().map(|b| (b.label.clone(), 0)).collect();
    for br in &m.branches {
        if (br.s / (m.eta[0] - br.shift) - alpha0).abs() < 1e-9 * alpha0 {
            *t.get_mut(&br.label).unwrap() -= br.mult as i64;
        }
    }
    t
}

pub fn as_map(c: &CrossingSet) -> BTreeMap<String, i64> {
    c.crossings.iter().map(|x| (x.label.clone(), x.t)).collect()
}
