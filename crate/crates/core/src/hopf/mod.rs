//! Local bifurcation invariants, branch verdicts and global alternatives.

mod provider;

use std::collections::BTreeMap;

use serde::Serialize;

pub use provider::{DegreeProvider, O2Provider};

use crate::burnside::{BurnsideElement, TwistedModuleElement};
use crate::error::{Error, Result};
use crate::spectral::{
    critical_frequencies, crossing_numbers, is_purely_imaginary, resonant_set, CharacteristicModel,
    CrossingSet,
};

/// Data of the `k = 0` blocks: determinant signs and multiplicities per label.
#[derive(Clone, Debug, Default)]
pub struct StationaryBlocks {
    pub rho: BTreeMap<String, i32>,
    pub m0: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, Default)]
pub struct LocalOptions {
    pub k_max: Option<u32>,
    /// Frequency window; derived from the model when affine.
    pub beta_max: Option<f64>,
    pub stationary: Option<StationaryBlocks>,
}

/// The local bifurcation invariant at a center.
#[derive(Clone, Debug, Serialize)]
pub struct HopfInvariant {
    pub alpha: f64,
    pub beta: f64,
    pub k_max: u32,
    pub prefix: BurnsideElement,
    pub prefix_assumed_trivial: bool,
    pub body: TwistedModuleElement,
    pub combined: TwistedModuleElement,
    /// Whether the degrees are complete or only their maximal parts.
    pub complete: bool,
    /// Crossing numbers at each resonant fold `k`.
    pub crossings: BTreeMap<u32, CrossingSet>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BranchWithSymmetry,
    NoInformation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub class: String,
    pub fold: u32,
    pub label: String,
    pub coefficient: i64,
    pub verdict: Verdict,
    /// Exact symmetry group `phi_k(K)` of the bifurcating solutions.
    pub symmetry: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unbounded {
    Forced,
    NotForced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalVerdict {
    pub sum: TwistedModuleElement,
    pub sum_zero: bool,
}

/// Frequency window of an affine model: every crossing frequency plus margin.
fn default_beta_max(model: &CharacteristicModel, alpha0: f64) -> Result<f64> {
    match model {
        CharacteristicModel::Affine(m) => {
            let top = m
                .branches
                .iter()
                .map(|b| m.value(b, alpha0))
                .filter(|z| is_purely_imaginary(*z))
                .map(|z| z.im)
                .fold(0.0f64, f64::max);
            Ok(if top > 0.0 { 2.0 * top } else { 1.0 })
        }
        CharacteristicModel::Matrix(_) => Err(Error::InvalidArgument(
            "matrix-family models need an explicit beta_max".into(),
        )),
    }
}

/// `omega(alpha0, beta0)`: the prefix acting on `sum_k sum_j t_j(alpha0, k beta0) deg_{V_{k,j}}`.
pub fn local_invariant(
    provider: &dyn DegreeProvider,
    model: &CharacteristicModel,
    alpha0: f64,
    beta0: f64,
    opts: &LocalOptions,
) -> Result<HopfInvariant> {
    if !(beta0 > 0.0) {
        return Err(Error::InvalidArgument(
            "center frequency must be positive".into(),
        ));
    }
    let beta_max = match opts.beta_max {
        Some(b) => b,
        None => default_beta_max(model, alpha0)?,
    };
    let freqs = critical_frequencies(model, alpha0, beta_max)?;
    let betas: Vec<f64> = freqs.iter().map(|f| f.beta).collect();
    let resonances = resonant_set(&betas, beta0);
    if resonances.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no multiple of i{beta0} is a characteristic value at alpha = {alpha0}"
        )));
    }
    let k_max = opts.k_max.unwrap_or((beta_max / beta0).floor() as u32 + 1);
    let mut warnings = Vec::new();
    let beyond: Vec<u32> = resonances
        .iter()
        .map(|r| r.0)
        .filter(|&k| k > k_max)
        .collect();
    if !beyond.is_empty() {
        warnings.push(format!(
            "resonances at folds {beyond:?} exceed k_max = {k_max} and were not included"
        ));
    }
    if opts.k_max.is_some_and(|k| (k as f64) * beta0 < beta_max) {
        warnings.push(format!(
            "k_max = {k_max} does not cover the frequency window up to {beta_max}"
        ));
    }
    let mut body = TwistedModuleElement::zero();
    let mut crossings = BTreeMap::new();
    for &(k, _) in resonances.iter().filter(|r| r.0 <= k_max) {
        let c = crossing_numbers(model, alpha0, k as f64 * beta0, None)?;
        for x in &c.crossings {
            if x.t != 0 {
                body = body.add(&provider.basic(k, &x.label)?.scale(x.t));
            }
        }
        crossings.insert(k, c);
    }
    let (prefix, prefix_assumed_trivial) = match &opts.stationary {
        Some(s) => (provider.prefix(&s.rho, &s.m0)?, false),
        None => (provider.unit(), true),
    };
    let combined = provider.act(&prefix, &body)?;
    Ok(HopfInvariant {
        alpha: alpha0,
        beta: beta0,
        k_max,
        prefix,
        prefix_assumed_trivial,
        body,
        combined,
        complete: provider.complete(),
        crossings,
        warnings,
    })
}

/// Branch verdicts for every maximal type of every block crossing at the center.
pub fn local_verdict(
    provider: &dyn DegreeProvider,
    inv: &HopfInvariant,
) -> Result<Vec<ClassVerdict>> {
    let mut out = Vec::new();
    for (&k, c) in &inv.crossings {
        for x in c.crossings.iter().filter(|x| x.t != 0) {
            for class in provider.maximal_types(k, &x.label)? {
                let coefficient = inv.combined.coeff(&class);
                let verdict = if coefficient != 0 {
                    Verdict::BranchWithSymmetry
                } else {
                    Verdict::NoInformation
                };
                let symmetry = match verdict {
                    Verdict::BranchWithSymmetry => Some(provider.unfold(k, &x.label, &class)?),
                    Verdict::NoInformation => None,
                };
                out.push(ClassVerdict {
                    class,
                    fold: k,
                    label: x.label.clone(),
                    coefficient,
                    verdict,
                    symmetry,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.fold, &a.label, &a.class).cmp(&(b.fold, &b.label, &b.class)));
    out.dedup();
    Ok(out)
}

/// Formal sum of the invariants of a set of centers.
pub fn global_sum_test(invariants: &[HopfInvariant]) -> GlobalVerdict {
    let sum = invariants
        .iter()
        .fold(TwistedModuleElement::zero(), |acc, i| acc.add(&i.combined));
    let sum_zero = sum.is_zero();
    GlobalVerdict { sum, sum_zero }
}

/// An unbounded branch is forced when all values share a sign and one is nonzero.
pub fn unbounded_verdict(values: &[i64]) -> Unbounded {
    let pos = values.iter().any(|&v| v > 0);
    let neg = values.iter().any(|&v| v < 0);
    if pos != neg {
        Unbounded::Forced
    } else {
        Unbounded::NotForced
    }
}

/// `t_K^k` at each center, over odd folds only.
pub fn odd_fold_values(
    provider: &dyn DegreeProvider,
    invariants: &[HopfInvariant],
    class_at_fold_one: &str,
) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for inv in invariants {
        for (&k, c) in inv.crossings.iter().filter(|(k, _)| *k % 2 == 1) {
            let mut t = 0;
            for x in c.crossings.iter().filter(|x| x.t != 0) {
                let types = provider.maximal_types(k, &x.label)?;
                for class in types {
                    if provider.unfold(k, &x.label, &class)? == class_at_fold_one {
                        t += x.t;
                    }
                }
            }
            out.push(t);
        }
    }
    Ok(out)
}

/// Minimal period and frequency cap from `p >= 4 / (|A| + L |i|)`.
pub fn period_bound(norm_a: f64, lipschitz: f64, norm_emb: f64) -> Result<(f64, f64)> {
    for (name, v) in [
        ("operator norm", norm_a),
        ("Lipschitz constant", lipschitz),
        ("embedding norm", norm_emb),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "{name} must be positive and finite"
            )));
        }
    }
    let s = norm_a + lipschitz * norm_emb;
    Ok((4.0 / s, std::f64::consts::PI * s / 2.0))
}
