use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::model::{AffineModel, CharacteristicModel, MatrixBlock, MatrixFamilyModel};
use crate::degree::{rectangle, winding_of};
use crate::error::{Error, Result};

/// Relative tolerance used to compare frequencies.
pub const RESONANCE_TOL: f64 = 1e-9;
const MAX_SHRINK: usize = 40;

pub fn is_purely_imaginary(z: Complex64) -> bool {
    z.re.abs() < 1e-10 * (1.0 + z.norm())
}

fn same_freq(a: f64, b: f64) -> bool {
    (a - b).abs() <= RESONANCE_TOL * a.abs().max(b.abs())
}

/// A critical frequency with the isotypic blocks (and multiplicities) where it occurs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalFrequency {
    pub beta: f64,
    pub labels: Vec<(String, u32)>,
}

fn merge(mut hits: Vec<(f64, String, u32)>) -> Vec<CriticalFrequency> {
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
    let mut out: Vec<CriticalFrequency> = Vec::new();
    for (beta, label, m) in hits {
        match out.last_mut() {
            Some(last) if same_freq(last.beta, beta) => {
                match last.labels.iter_mut().find(|(l, _)| *l == label) {
                    Some(e) => e.1 += m,
                    None => last.labels.push((label, m)),
                }
            }
            _ => out.push(CriticalFrequency {
                beta,
                labels: vec![(label, m)],
            }),
        }
    }
    out
}

/// Frequencies `beta in (0, beta_max]` with `i beta` a characteristic value at `alpha0`.
pub fn critical_frequencies(
    model: &CharacteristicModel,
    alpha0: f64,
    beta_max: f64,
) -> Result<Vec<CriticalFrequency>> {
    if !(beta_max > 0.0) || !beta_max.is_finite() {
        return Err(Error::InvalidArgument(
            "beta_max must be positive and finite".into(),
        ));
    }
    match model {
        CharacteristicModel::Affine(m) => {
            let mut hits = Vec::new();
            for br in &m.branches {
                let z = m.value(br, alpha0);
                if is_purely_imaginary(z) && z.im > 0.0 && z.im <= beta_max * (1.0 + RESONANCE_TOL)
                {
                    hits.push((z.im, br.label.clone(), br.mult));
                }
            }
            Ok(merge(hits))
        }
        CharacteristicModel::Matrix(m) => {
            let mut hits = Vec::new();
            for b in &m.blocks {
                for (beta, mult) in imaginary_zeros(b, alpha0, beta_max)? {
                    hits.push((beta, b.label.clone(), mult));
                }
            }
            Ok(merge(hits))
        }
    }
}

fn block_winding(b: &MatrixBlock, alpha: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<i64> {
    let r = rectangle(x0, x1, y0, y1);
    winding_of(|t| b.det(alpha, r(t)))
}

/// Purely imaginary zeros of `det Delta(alpha, .)` on `(0, beta_max]`, localized by nested rectangles.
fn imaginary_zeros(b: &MatrixBlock, alpha: f64, beta_max: f64) -> Result<Vec<(f64, u32)>> {
    // contour edges are placed at odd fractions so that they rarely meet a round frequency; if one
    // does pass through a zero, the scan is repeated with other edges
    let mut last = None;
    for (fw, fh) in [(1.0, 1.0137), (0.9133, 1.0291), (0.7771, 1.0443)] {
        match scan_axis(b, alpha, fw * beta_max / 64.0, fh * beta_max) {
            Ok(mut v) => {
                v.retain(|z| z.0 <= beta_max * (1.0 + RESONANCE_TOL));
                return Ok(v);
            }
            Err(Error::Winding(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Winding(last.unwrap_or_default()))
}

fn scan_axis(b: &MatrixBlock, alpha: f64, w0: f64, hi: f64) -> Result<Vec<(f64, u32)>> {
    let lo = 1e-6 * hi;
    let mut out = Vec::new();
    // strips narrow with their height, which keeps the contour's dynamic range bounded; zeros off
    // the axis simply drop out
    let width = |a: f64, c: f64| w0.min(c - a);
    let mut stack = vec![(lo, hi, block_winding(b, alpha, -w0, w0, lo, hi)?)];
    while let Some((a, c, wn)) = stack.pop() {
        if wn == 0 {
            continue;
        }
        if c - a < 1e-10 * (1.0 + c) {
            // shrink a square about the strip: a purely imaginary zero survives every shrink, and the
            // contour stays about `w` away from it
            let y = 0.5 * (a + c);
            let mut w = width(a, c);
            let mut kept = wn;
            while w > 1e-10 * (1.0 + c) && kept != 0 {
                w *= 0.5;
                kept = block_winding(b, alpha, -w, w, y - w, y + w)?;
            }
            if kept > 0 {
                out.push((y, kept as u32));
            }
            continue;
        }
        // split off-center, moving the cut when it lands on a zero
        let mut split = None;
        for f in [0.4975, 0.4851, 0.5127, 0.4619, 0.5383] {
            let mid = a + f * (c - a);
            let (wl, wh) = (width(a, mid), width(mid, c));
            match (
                block_winding(b, alpha, -wl, wl, a, mid),
                block_winding(b, alpha, -wh, wh, mid, c),
            ) {
                (Ok(lo), Ok(hi)) => {
                    split = Some((mid, lo, hi));
                    break;
                }
                (Err(Error::Winding(_)), _) | (_, Err(Error::Winding(_))) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        let (mid, lo, hi) =
            split.ok_or_else(|| Error::Winding(format!("no clean split of [{a}, {c}]")))?;
        stack.push((mid, c, hi));
        stack.push((a, mid, lo));
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(out)
}

/// Multiples `k beta0` (integer `k >= 1`) among the given frequencies.
pub fn resonant_set(freqs: &[f64], beta0: f64) -> Vec<(u32, f64)> {
    let mut out: Vec<(u32, f64)> = freqs
        .iter()
        .filter_map(|&b| {
            let k = (b / beta0).round();
            (k >= 1.0 && same_freq(b, k * beta0)).then_some((k as u32, b))
        })
        .collect();
    out.sort_by_key(|a| a.0);
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

/// Crossing numbers of one isotypic block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub label: String,
    pub t_minus: i64,
    pub t_plus: i64,
    pub t: i64,
}

/// Crossing numbers at `(alpha0, beta)` for every block, with the window that was used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingSet {
    pub alpha: f64,
    pub beta: f64,
    pub eps: f64,
    pub delta: f64,
    pub crossings: Vec<Crossing>,
}

impl CrossingSet {
    pub fn t(&self, label: &str) -> i64 {
        self.crossings
            .iter()
            .find(|c| c.label == label)
            .map_or(0, |c| c.t)
    }
}

enum Probe {
    Ok(BTreeMap<String, i64>),
    Boundary,
}

/// Counts in the open rectangle `(x0, eps) x (beta - eps, beta + eps)`.
fn affine_count(m: &AffineModel, alpha: f64, beta: f64, x0: f64, eps: f64) -> Probe {
    let mut counts = BTreeMap::new();
    for b in &m.branches {
        counts.entry(b.label.clone()).or_insert(0);
    }
    let tol = 1e-12 * (1.0 + beta);
    for br in &m.branches {
        let z = m.value(br, alpha);
        let (x, y) = (z.re, z.im - beta);
        let inside_closed = x >= x0 - tol && x <= eps + tol && y.abs() <= eps + tol;
        let inside_open = x > x0 + tol && x < eps - tol && y.abs() < eps - tol;
        if inside_closed && !inside_open {
            return Probe::Boundary;
        }
        if inside_open {
            *counts.get_mut(&br.label).unwrap() += br.mult as i64;
        }
    }
    Probe::Ok(counts)
}

fn matrix_count(m: &MatrixFamilyModel, alpha: f64, beta: f64, x0: f64, eps: f64) -> Result<Probe> {
    let mut counts = BTreeMap::new();
    for b in &m.blocks {
        match block_winding(b, alpha, x0, eps, beta - eps, beta + eps) {
            Ok(w) => *counts.entry(b.label.clone()).or_insert(0) += w,
            Err(Error::Winding(_)) => return Ok(Probe::Boundary),
            Err(e) => return Err(e),
        }
    }
    Ok(Probe::Ok(counts))
}

fn probe(model: &CharacteristicModel, alpha: f64, beta: f64, x0: f64, eps: f64) -> Result<Probe> {
    match model {
        CharacteristicModel::Affine(m) => Ok(affine_count(m, alpha, beta, x0, eps)),
        CharacteristicModel::Matrix(m) => matrix_count(m, alpha, beta, x0, eps),
    }
}

/// Whether no characteristic value leaves the doubled window `(-eps, eps) x (beta -+ eps)` between
/// `alpha0` and `alpha0 -+ delta`; otherwise the one-sided counts say nothing about the crossing.
fn conserved(
    model: &CharacteristicModel,
    alpha0: f64,
    beta: f64,
    eps: f64,
    delta: f64,
) -> Result<bool> {
    let at = |alpha| -> Result<Option<BTreeMap<String, i64>>> {
        Ok(match probe(model, alpha, beta, -eps, eps)? {
            Probe::Ok(c) => Some(c),
            Probe::Boundary => None,
        })
    };
    let mid = at(alpha0)?;
    Ok(mid.is_some() && mid == at(alpha0 - delta)? && mid == at(alpha0 + delta)?)
}

/// Whether the closed window `[-eps, eps] x [beta -+ eps]` holds nothing at `alpha0` but `i beta` itself.
///
/// For matrix blocks this compares the window's zero count with that of a square of side `1e-6 eps`
/// about `i beta`, so a neighbour closer than that goes unnoticed.
fn isolated(model: &CharacteristicModel, alpha0: f64, beta: f64, eps: f64) -> Result<bool> {
    let target = Complex64::new(0.0, beta);
    match model {
        CharacteristicModel::Affine(m) => Ok(m.branches.iter().all(|br| {
            let z = m.value(br, alpha0);
            let inside =
                z.re.abs() <= eps * (1.0 + 1e-9) && (z.im - beta).abs() <= eps * (1.0 + 1e-9);
            !inside || (z - target).norm() <= 1e-10 * (1.0 + beta)
        })),
        CharacteristicModel::Matrix(m) => {
            let tiny = 1e-6 * eps;
            for b in &m.blocks {
                let whole = block_winding(b, alpha0, -eps, eps, beta - eps, beta + eps);
                let core = block_winding(b, alpha0, -tiny, tiny, beta - tiny, beta + tiny);
                match (whole, core) {
                    (Ok(w), Ok(c)) if w == c => {}
                    (Ok(_), Ok(_)) | (Err(Error::Winding(_)), _) | (_, Err(Error::Winding(_))) => {
                        return Ok(false)
                    }
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
            Ok(true)
        }
    }
}

fn evaluate(
    model: &CharacteristicModel,
    alpha0: f64,
    beta: f64,
    eps: f64,
    delta: f64,
) -> Result<Option<Vec<Crossing>>> {
    if !conserved(model, alpha0, beta, eps, delta)? {
        return Ok(None);
    }
    let minus = probe(model, alpha0 - delta, beta, 0.0, eps)?;
    let plus = probe(model, alpha0 + delta, beta, 0.0, eps)?;
    match (minus, plus) {
        (Probe::Ok(a), Probe::Ok(b)) => Ok(Some(
            a.iter()
                .map(|(l, &tm)| {
                    let tp = b.get(l).copied().unwrap_or(0);
                    Crossing {
                        label: l.clone(),
                        t_minus: tm,
                        t_plus: tp,
                        t: tm - tp,
                    }
                })
                .collect(),
        )),
        _ => Ok(None),
    }
}

/// Default window seed: a quarter of the distance from `i beta` to the nearest other characteristic value.
fn seed(model: &CharacteristicModel, alpha0: f64, beta: f64) -> Result<f64> {
    let target = Complex64::new(0.0, beta);
    let mut gap = beta;
    match model {
        CharacteristicModel::Affine(m) => {
            for br in &m.branches {
                let d = (m.value(br, alpha0) - target).norm();
                if d > 1e-10 * (1.0 + beta) {
                    gap = gap.min(d);
                }
            }
        }
        CharacteristicModel::Matrix(_) => {
            let freqs = critical_frequencies(model, alpha0, 2.0 * beta)?;
            for f in freqs {
                if !same_freq(f.beta, beta) {
                    gap = gap.min((f.beta - beta).abs());
                }
            }
        }
    }
    Ok(gap / 4.0)
}

/// Crossing numbers `t_j = t_j^- - t_j^+` at the center `(alpha0, beta)`.
///
/// The window `(eps, delta)` starts from the seed (or the supplied values) and is halved until it
/// isolates `i beta`, the probes avoid its boundary and the counts agree with the next smaller `delta`.
pub fn crossing_numbers(
    model: &CharacteristicModel,
    alpha0: f64,
    beta: f64,
    window: Option<(f64, f64)>,
) -> Result<CrossingSet> {
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(
            "crossing frequency must be positive".into(),
        ));
    }
    let (mut eps, mut delta) = match window {
        Some(w) => w,
        None => {
            let e = seed(model, alpha0, beta)?;
            (e, e)
        }
    };
    for i in 0..=MAX_SHRINK {
        if !isolated(model, alpha0, beta, eps)? {
            eps /= 2.0;
            delta = delta.min(eps);
            continue;
        }
        let a = evaluate(model, alpha0, beta, eps, delta)?;
        let b = evaluate(model, alpha0, beta, eps, delta / 2.0)?;
        match (a, b) {
            (Some(a), Some(b)) if a == b => {
                return Ok(CrossingSet {
                    alpha: alpha0,
                    beta,
                    eps,
                    delta,
                    crossings: a,
                });
            }
            (None, _) | (_, None) => {
                // a branch sits on the window edge: the moving one is cured by a smaller delta,
                // a neighbouring one by a smaller eps
                delta /= 2.0;
                if i % 2 == 1 {
                    eps /= 2.0;
                }
            }
            _ => delta /= 2.0,
        }
    }
    Err(Error::Isolation(format!(
        "no isolating window at alpha = {alpha0}, beta = {beta}"
    )))
}

/// `t_K^k = sum_j zeta_{k,j}(K) t_j(alpha0, k beta0)`.
///
/// `crossings[k]` holds the crossing numbers at `k beta0`; `maximal[(k, label)]` lists the maximal
/// twisted types of the block.
pub fn t_k_k(
    crossings: &BTreeMap<u32, CrossingSet>,
    maximal: &BTreeMap<(u32, String), Vec<String>>,
) -> BTreeMap<(u32, String), i64> {
    let mut out: BTreeMap<(u32, String), i64> = BTreeMap::new();
    for ((k, label), types) in maximal {
        let t = crossings.get(k).map_or(0, |c| c.t(label));
        for ty in types {
            *out.entry((*k, ty.clone())).or_insert(0) += t;
        }
    }
    out
}
