//! Hopf bifurcation for a reaction-diffusion system on the unit disk, alone and as a ring of four
//! coupled cells.
//!
//! On the `j`-th Fourier mode of the disk the Dirichlet Laplacian has eigenvalues `-s_{n,j}^2`, and
//! the characteristic values of the linearization are `lambda = alpha (eta - mu) - s_{n,j}` with
//! `eta = a + ib` and `mu` the coupling eigenvalue (zero for one cell).

mod bessel;
mod coupling;

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

pub use bessel::{bessel_j, bessel_zeros, BesselZeroTable};
pub use coupling::{
    cell_action, coupling_matrix, coupling_spectrum, CouplingSpectrum, IsotypicBlock,
};

use crate::burnside::TwistedModuleElement;
use crate::degree::DegreeEngine;
use crate::error::{Error, Result};
use crate::hopf::{
    global_sum_test, local_invariant, local_verdict, odd_fold_values, unbounded_verdict,
    ClassVerdict, HopfInvariant, LocalOptions, O2Provider, Unbounded,
};
use crate::o2::verify_maximal_type;
use crate::spectral::{AffineModel, Branch, CharacteristicModel};

/// An isotypic family of the linearization: finite irreducible with its coupling eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Family {
    /// Position of `mu` among `c + 2d, c, c - 2d` (0, 1, 3); absent for a single cell.
    pub index: Option<usize>,
    pub irrep: String,
    pub mu: f64,
}

/// A center `alpha = s_{n,j}/(a - mu)`, `beta = s_{n,j} |b| / (k (a - mu))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Center {
    pub n: usize,
    pub j: usize,
    pub k: u32,
    pub index: Option<usize>,
    /// Block label `j:irrep`.
    pub label: String,
    pub s: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalSet {
    pub alpha_max: f64,
    pub k_max: u32,
    /// Whether the zero table reaches past the window, so that no center is missing.
    pub complete: bool,
    pub centers: Vec<Center>,
}

pub fn block_label(j: usize, irrep: &str) -> String {
    format!("{j}:{irrep}")
}

/// All centers with `0 < alpha <= alpha_max` and fold `k <= k_max` reachable from the table.
pub fn critical_set(
    a: f64,
    b: f64,
    families: &[Family],
    table: &BesselZeroTable,
    alpha_max: f64,
    k_max: u32,
) -> Result<CriticalSet> {
    if a == 0.0 || b == 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(
            "eta = a + ib needs a != 0 and b != 0".into(),
        ));
    }
    if !(alpha_max > 0.0) || !alpha_max.is_finite() || k_max == 0 {
        return Err(Error::InvalidArgument(
            "the window needs alpha_max > 0 and k_max >= 1".into(),
        ));
    }
    let mut centers = Vec::new();
    let mut complete = true;
    for f in families {
        let denom = a - f.mu;
        if denom == 0.0 {
            return Err(Error::InvalidArgument(format!("a - mu = 0 on {}", f.irrep)));
        }
        if denom < 0.0 {
            continue;
        }
        let bound = alpha_max * denom;
        // s_{1,j} > j, so columns past the table start beyond j_max + 1
        if (table.j_max + 1) as f64 <= bound {
            complete = false;
        }
        for j in 0..=table.j_max {
            if table.zeros[j].last().is_some_and(|&s| s <= bound) {
                complete = false;
            }
            for n in 1..=table.n_max {
                let s = table.get(n, j);
                if s > bound {
                    break;
                }
                for k in 1..=k_max {
                    centers.push(Center {
                        n,
                        j,
                        k,
                        index: f.index,
                        label: block_label(j, &f.irrep),
                        s,
                        alpha: s / denom,
                        beta: s * b.abs() / (k as f64 * denom),
                    });
                }
            }
        }
    }
    centers.sort_by(|x, y| {
        x.alpha
            .partial_cmp(&y.alpha)
            .unwrap()
            .then(x.k.cmp(&y.k))
            .then(x.label.cmp(&y.label))
    });
    for w in centers.windows(2) {
        if w[0].alpha == w[1].alpha && w[0].beta == w[1].beta {
            return Err(Error::Isolation(format!(
                "centers {} and {} coincide",
                w[0].label, w[1].label
            )));
        }
    }
    Ok(CriticalSet {
        alpha_max,
        k_max,
        complete,
        centers,
    })
}

/// The single disk: `Gamma1 = Z2` acting antipodally.
pub fn critical_set_single(
    a: f64,
    b: f64,
    table: &BesselZeroTable,
    alpha_max: f64,
    k_max: u32,
) -> Result<CriticalSet> {
    critical_set(a, b, &single_families(), table, alpha_max, k_max)
}

fn single_families() -> Vec<Family> {
    vec![Family {
        index: None,
        irrep: "V1[Z1]".into(),
        mu: 0.0,
    }]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Single,
    Coupled,
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" | "disk" => Ok(Preset::Single),
            "coupled" | "disk-coupled-d4" => Ok(Preset::Coupled),
            _ => Err(Error::InvalidArgument(format!("unknown preset {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub alpha_max: f64,
    pub k_max: u32,
    /// Recheck every maximal type in two dihedral truncations of O(2).
    pub verify_types: bool,
}

impl ExampleParams {
    pub fn single() -> Self {
        ExampleParams {
            a: 1.0,
            b: 1.0,
            c: 0.0,
            d: 0.0,
            alpha_max: 6.0,
            k_max: 3,
            verify_types: false,
        }
    }
    pub fn coupled() -> Self {
        ExampleParams {
            a: 4.0,
            b: 1.0,
            c: 1.0,
            d: 0.5,
            alpha_max: 1.5,
            k_max: 3,
            verify_types: false,
        }
    }
    pub fn preset(p: Preset) -> Self {
        match p {
            Preset::Single => Self::single(),
            Preset::Coupled => Self::coupled(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryClass {
    pub name: String,
    pub symbolic: String,
    pub orbit_type: String,
    pub normalizer: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub center: Center,
    /// `t_j(alpha, k beta)` of the center's own block.
    pub crossing: i64,
    pub invariant: HopfInvariant,
    pub verdicts: Vec<ClassVerdict>,
    pub classes: Vec<SymmetryClass>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnboundedEntry {
    pub label: String,
    pub class: String,
    pub values: Vec<i64>,
    pub verdict: Unbounded,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalReport {
    pub sum: TwistedModuleElement,
    pub sum_zero: bool,
    pub unbounded: Vec<UnboundedEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub preset: Preset,
    pub gamma1: String,
    pub params: ExampleParams,
    pub coupling: Option<CouplingSpectrum>,
    pub families: Vec<Family>,
    pub critical_set: CriticalSet,
    pub centers: Vec<CenterReport>,
    pub global: GlobalReport,
    pub warnings: Vec<String>,
}

/// `Gamma1`, coupling data and isotypic families of a preset.
pub fn preset_families(
    preset: Preset,
    params: &ExampleParams,
) -> Result<(&'static str, Option<CouplingSpectrum>, Vec<Family>)> {
    Ok(match preset {
        Preset::Single => ("z2", None, single_families()),
        Preset::Coupled => {
            let e = DegreeEngine::from_name("d4xz2")?;
            let cs = coupling_spectrum(e.lattice().group(), e.irreps(), params.c, params.d)?;
            let fams = cs
                .blocks
                .iter()
                .map(|b| Family {
                    index: Some(b.index),
                    irrep: b.irrep.clone(),
                    mu: b.mu,
                })
                .collect();
            ("d4xz2", Some(cs), fams)
        }
    })
}

/// Zero table covering the window of a preset, read from and written to `cache` when given.
pub fn preset_table(
    families: &[Family],
    params: &ExampleParams,
    cache: Option<&Path>,
) -> Result<BesselZeroTable> {
    let reach = families
        .iter()
        .map(|f| params.alpha_max * (params.a - f.mu))
        .fold(0.0f64, f64::max);
    let j_max = reach.max(0.0).floor() as usize;
    // s_{n,j} > (n - 1/4) pi
    let n_max = ((reach / std::f64::consts::PI + 1.25).ceil() as usize).max(1);
    let Some(dir) = cache else {
        return bessel_zeros(n_max, j_max);
    };
    let file = dir.join(format!("bessel-n{n_max}-j{j_max}.json"));
    if let Ok(text) = std::fs::read_to_string(&file) {
        if let Ok(t) = serde_json::from_str::<BesselZeroTable>(&text) {
            if t.n_max == n_max && t.j_max == j_max && t.check().is_ok() {
                return Ok(t);
            }
        }
    }
    let t = bessel_zeros(n_max, j_max)?;
    // the cache is an optimization: failing to write it is not an error
    let _ = std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&file, serde_json::to_string(&t).expect("table serializes")));
    Ok(t)
}

/// The characteristic model of a preset: one branch per zero, family and Fourier mode.
pub fn preset_model(
    params: &ExampleParams,
    families: &[Family],
    table: &BesselZeroTable,
) -> Result<AffineModel> {
    let mut branches = Vec::new();
    for f in families.iter().filter(|f| params.a - f.mu > 0.0) {
        for j in 0..=table.j_max {
            for n in 1..=table.n_max {
                branches.push(Branch {
                    s: table.get(n, j),
                    label: block_label(j, &f.irrep),
                    mult: 1,
                    shift: f.mu,
                });
            }
        }
    }
    AffineModel::new(params.a, params.b, branches)
}

/// The full pipeline: spectrum, centers, crossing numbers, invariants, verdicts and the global test.
pub fn example_report(preset: Preset, params: &ExampleParams) -> Result<ExampleReport> {
    example_report_with(preset, params, None)
}

/// As [`example_report`], with an optional directory caching zero tables.
pub fn example_report_with(
    preset: Preset,
    params: &ExampleParams,
    cache: Option<&Path>,
) -> Result<ExampleReport> {
    let (gamma1, coupling, families) = preset_families(preset, params)?;
    let provider = O2Provider::from_name(gamma1)?;
    let table = preset_table(&families, params, cache)?;
    let set = critical_set(
        params.a,
        params.b,
        &families,
        &table,
        params.alpha_max,
        params.k_max,
    )?;
    let mut warnings = Vec::new();
    if !set.complete {
        warnings.push("the zero table does not cover the whole window".into());
    }
    let model: CharacteristicModel = preset_model(params, &families, &table)?.into();

    let mut centers = Vec::new();
    for c in &set.centers {
        let inv = local_invariant(&provider, &model, c.alpha, c.beta, &LocalOptions::default())?;
        let crossing = inv.crossings.get(&c.k).map_or(0, |x| x.t(&c.label));
        let verdicts = local_verdict(&provider, &inv)?;
        let types = provider.types(c.k, &c.label)?;
        if params.verify_types {
            for t in types.iter().filter(|t| t.witness.is_some()) {
                verify_maximal_type(&provider.engine, label_irrep(&c.label), c.j, t)?;
            }
        }
        let classes = types
            .into_iter()
            .map(|t| SymmetryClass {
                name: t.name,
                symbolic: t.symbolic,
                orbit_type: t.orbit_type,
                normalizer: t.normalizer,
            })
            .collect();
        warnings.extend(
            inv.warnings
                .iter()
                .map(|w| format!("center ({}, {}): {w}", c.alpha, c.beta)),
        );
        centers.push(CenterReport {
            center: c.clone(),
            crossing,
            invariant: inv,
            verdicts,
            classes,
        });
    }

    let invariants: Vec<HopfInvariant> = centers.iter().map(|c| c.invariant.clone()).collect();
    let sum = global_sum_test(&invariants);
    // one entry per block and maximal type, over the odd-fold centers of the window
    let mut unbounded = Vec::new();
    let mut seen: BTreeMap<String, ()> = BTreeMap::new();
    for c in &set.centers {
        if seen.insert(c.label.clone(), ()).is_some() {
            continue;
        }
        for class in provider.types(1, &c.label)? {
            let values = odd_fold_values(&provider, &invariants, &class.name)?;
            let verdict = unbounded_verdict(&values);
            unbounded.push(UnboundedEntry {
                label: c.label.clone(),
                class: class.name,
                values,
                verdict,
            });
        }
    }
    Ok(ExampleReport {
        preset,
        gamma1: gamma1.into(),
        params: params.clone(),
        coupling,
        families,
        critical_set: set,
        centers,
        global: GlobalReport {
            sum: sum.sum,
            sum_zero: sum.sum_zero,
            unbounded,
        },
        warnings,
    })
}

fn label_irrep(label: &str) -> &str {
    label.split_once(':').map_or(label, |x| x.1)
}
