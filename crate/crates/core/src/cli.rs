//! Command-line front end: every subcommand prints one versioned JSON document.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::burnside::{generator_product, BurnsideElement};
use crate::degree::DegreeEngine;
use crate::disk::{
    example_report_with, preset_families, preset_model, preset_table, ExampleParams, Preset,
};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, IrrepKind};
use crate::hopf::{
    global_sum_test, local_invariant, local_verdict, odd_fold_values, unbounded_verdict,
    DegreeProvider, LocalOptions, O2Provider, StationaryBlocks,
};
use crate::o2::{enumerate_mode_classes, maximal_twisted_types_o2, verify_maximal_type};
use crate::report::{envelope, error_object, render, validate_report};
use crate::spectral::{critical_frequencies, crossing_numbers, AffineModel, CharacteristicModel};

/// Directory for cached Bessel zero tables.
pub const CACHE_ENV: &str = "TWDEG_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "twdeg",
    version,
    about = "Twisted equivariant degree invariants for symmetric Hopf bifurcation"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group order, subgroup classes and real irreducibles.
    Group {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        irreps: bool,
    },
    /// Products in the Burnside ring.
    Burnside {
        #[arg(long)]
        spec: String,
        /// Multiply two classes.
        #[arg(long, num_args = 2, value_names = ["H", "K"])]
        mul: Option<Vec<String>>,
        /// Full multiplication table of the generators.
        #[arg(long)]
        table: bool,
    },
    /// Basic degrees, gamma-degrees and maximal orbit types.
    BasicDegree(BasicArgs),
    /// Crossing numbers of a characteristic model at a center.
    Crossing {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Also list all critical frequencies up to this value.
        #[arg(long)]
        beta_max: Option<f64>,
    },
    /// Local bifurcation invariant and branch verdicts at one center.
    HopfLocal {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        local: LocalArgs,
    },
    /// Sum test and unbounded-branch verdict over several centers.
    HopfGlobal {
        #[command(flatten)]
        model: ModelArgs,
        /// Center as `alpha:beta`; repeat for several.
        #[arg(long = "center", required = true)]
        centers: Vec<String>,
        /// Maximal class (at fold one) for the odd-fold test.
        #[arg(long)]
        class: Option<String>,
        /// Block label the class belongs to.
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        local: LocalArgs,
    },
    /// Conjugacy classes of O(2) x Gamma1 x S^1 in a circle mode.
    ModeClasses {
        #[arg(long)]
        gamma1: String,
        #[arg(long)]
        mode: usize,
        #[arg(long)]
        count: bool,
    },
    /// The disk examples end to end.
    DiskExample {
        #[arg(long, default_value = "single")]
        preset: String,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long)]
        alpha_max: Option<f64>,
        #[arg(long)]
        k_max: Option<u32>,
        /// Recheck every maximal type in two dihedral truncations of O(2).
        #[arg(long)]
        verify: bool,
    },
    /// Check the internal identities of an emitted report.
    Validate { path: PathBuf },
}

#[derive(Debug, Args)]
pub struct BasicArgs {
    #[arg(long)]
    spec: String,
    /// Irreducible name; all of them when absent.
    #[arg(long)]
    irrep: Option<String>,
    #[arg(long, default_value_t = 1)]
    fold: u32,
    /// gamma-degrees of the stationary problem instead.
    #[arg(long)]
    gamma: bool,
    /// Maximal twisted orbit types only.
    #[arg(long)]
    maximal: bool,
    /// Maximal types for O(2) x Gamma with this dihedral mode.
    #[arg(long)]
    o2_mode: Option<usize>,
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// JSON file `{eta: [a, b], branches: [{s, label, mult, shift}]}` or a builtin: `disk`, `disk-coupled-d4`.
    #[arg(long)]
    model: String,
    /// Finite symmetry group of the model; implied by the builtins.
    #[arg(long)]
    gamma1: Option<String>,
    /// Use the O(2) x Gamma1 symbolic layer (labels `j:irrep`); implied by the builtins.
    #[arg(long)]
    o2: bool,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    beta_max: Option<f64>,
    /// Determinant sign of a stationary block, `label=+1|-1`.
    #[arg(long = "rho")]
    rho: Vec<String>,
    /// Multiplicity of a stationary block, `label=n`.
    #[arg(long = "m0")]
    m0: Vec<String>,
}

fn load_group_engine(spec: &str) -> Result<DegreeEngine> {
    let path = Path::new(spec);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::BadSpec(format!("{spec}: {e}")))?
    } else {
        spec.to_string()
    };
    DegreeEngine::new(&GroupSpec::parse(&text)?.build()?)
}

struct LoadedModel {
    model: CharacteristicModel,
    provider: Box<dyn DegreeProvider>,
    gamma1: String,
    o2: bool,
}

fn load_model(m: &ModelArgs) -> Result<LoadedModel> {
    if let Ok(preset) = m.model.parse::<Preset>() {
        if matches!(m.model.as_str(), "disk" | "disk-coupled-d4") {
            let params = ExampleParams::preset(preset);
            let (gamma1, _, families) = preset_families(preset, &params)?;
            let table = preset_table(&families, &params, cache_dir().as_deref())?;
            let model = preset_model(&params, &families, &table)?.into();
            return Ok(LoadedModel {
                model,
                provider: Box::new(O2Provider::from_name(gamma1)?),
                gamma1: gamma1.into(),
                o2: true,
            });
        }
    }
    let text = std::fs::read_to_string(&m.model)
        .map_err(|e| Error::InvalidArgument(format!("model {}: {e}", m.model)))?;
    let affine: AffineModel =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("model {}: {e}", m.model)))?;
    affine.check()?;
    let gamma1 = m
        .gamma1
        .clone()
        .ok_or_else(|| Error::InvalidArgument("--gamma1 is required with a model file".into()))?;
    let engine = load_group_engine(&gamma1)?;
    let provider: Box<dyn DegreeProvider> = if m.o2 {
        Box::new(O2Provider::new(engine))
    } else {
        Box::new(engine)
    };
    Ok(LoadedModel {
        model: affine.into(),
        provider,
        gamma1,
        o2: m.o2,
    })
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn assignments<T: std::str::FromStr>(items: &[String], what: &str) -> Result<BTreeMap<String, T>> {
    items
        .iter()
        .map(|s| {
            let (l, v) = s.rsplit_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("{what} `{s}` is not label=value"))
            })?;
            let v = v
                .trim_start_matches('+')
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} value in `{s}`")))?;
            Ok((l.to_string(), v))
        })
        .collect()
}

fn local_options(l: &LocalArgs) -> Result<LocalOptions> {
    let stationary = if l.rho.is_empty() && l.m0.is_empty() {
        None
    } else {
        let rho: BTreeMap<String, i32> = assignments(&l.rho, "rho")?;
        if rho.values().any(|&r| r != 1 && r != -1) {
            return Err(Error::InvalidArgument("rho values must be +1 or -1".into()));
        }
        Some(StationaryBlocks {
            rho,
            m0: assignments(&l.m0, "m0")?,
        })
    };
    Ok(LocalOptions {
        k_max: l.k_max,
        beta_max: l.beta_max,
        stationary,
    })
}

fn parse_center(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidArgument(format!("center `{s}` is not alpha:beta"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn kind_name(k: IrrepKind) -> &'static str {
    match k {
        IrrepKind::Real => "real",
        IrrepKind::Complex => "complex",
    }
}

fn group_report(spec: &str, classes: bool, irreps: bool) -> Result<Value> {
    let e = load_group_engine(spec)?;
    let lat = e.lattice();
    let g = lat.group();
    let mut out = json!({
        "group": g.name(),
        "order": g.order(),
        "class_count": lat.len(),
        "subgroup_count": lat.subgroup_count(),
        "irrep_count": e.irreps().len(),
    });
    if classes {
        out["classes"] = lat
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "index": i,
                    "name": c.name,
                    "order": c.order(),
                    "class_size": c.class_size(),
                    "normalizer": lat.class(c.normalizer_class).name,
                    "weyl_order": c.weyl_order,
                })
            })
            .collect();
    }
    if irreps {
        out["irreps"] = e
            .irreps()
            .iter()
            .map(|r| json!({"index": r.index, "name": r.name, "dim": r.dim, "real_dim": r.real_dim, "kind": kind_name(r.kind), "kernel": r.kernel}))
            .collect();
    }
    Ok(out)
}

fn burnside_report(spec: &str, mul: Option<&[String]>, table: bool) -> Result<Value> {
    let e = load_group_engine(spec)?;
    let lat = e.lattice();
    let mut out = json!({ "group": lat.group().name() });
    if let Some([h, k]) = mul {
        let x = BurnsideElement::generator(h.as_str());
        let y = BurnsideElement::generator(k.as_str());
        lat.find(h)?;
        lat.find(k)?;
        out["product"] = e.mul(&x, &y)?.to_json();
    }
    if table {
        let names: Vec<&str> = lat.classes().iter().map(|c| c.name.as_str()).collect();
        let mut rows = Vec::new();
        for h in 0..lat.len() {
            let mut row = Vec::new();
            for k in 0..lat.len() {
                let mut p = BurnsideElement::zero();
                for (l, n) in generator_product(lat, h, k)? {
                    p.add_term(names[l], n);
                }
                row.push(p.to_json());
            }
            rows.push(Value::Array(row));
        }
        out["classes"] = json!(names);
        out["table"] = Value::Array(rows);
    }
    Ok(out)
}

fn basic_report(a: &BasicArgs) -> Result<Value> {
    let e = load_group_engine(&a.spec)?;
    let reps: Vec<usize> = match &a.irrep {
        Some(l) => vec![e.irrep_index(l)?],
        None => (0..e.irreps().len()).collect(),
    };
    let mut out = Vec::new();
    for j in reps {
        let name = &e.irreps()[j].name;
        if a.gamma {
            out.push(json!({"rep": name, "gamma_degree": e.gamma(j)?.to_json()}));
        } else if let Some(mode) = a.o2_mode {
            let types = match maximal_twisted_types_o2(&e, a.fold, mode, name) {
                Ok(t) => t,
                Err(Error::Unsupported(_)) if a.irrep.is_none() => continue,
                Err(err) => return Err(err),
            };
            if a.verify {
                for t in types.iter().filter(|t| t.witness.is_some()) {
                    verify_maximal_type(&e, name, mode, t)?;
                }
            }
            out.push(json!({"rep": name, "mode": mode, "fold": a.fold, "maximal_types": types, "verified": a.verify}));
        } else if a.maximal {
            let types: Vec<_> = e
                .twisted()
                .orbit_types(&e.irreps()[j], a.fold)?
                .into_iter()
                .filter(|t| t.maximal)
                .collect();
            out.push(json!({"rep": name, "fold": a.fold, "maximal_types": types}));
        } else {
            out.push(serde_json::to_value(e.basic(a.fold, j)?).expect("degrees serialize"));
        }
    }
    Ok(json!({"group": e.lattice().group().name(), "degrees": out}))
}

fn hopf_local_report(m: &ModelArgs, alpha: f64, beta: f64, l: &LocalArgs) -> Result<Value> {
    let lm = load_model(m)?;
    let inv = local_invariant(
        lm.provider.as_ref(),
        &lm.model,
        alpha,
        beta,
        &local_options(l)?,
    )?;
    let verdicts = local_verdict(lm.provider.as_ref(), &inv)?;
    Ok(json!({
        "gamma1": lm.gamma1,
        "o2": lm.o2,
        "center": {"alpha": alpha, "beta": beta},
        "invariant": inv,
        "verdicts": verdicts,
    }))
}

fn hopf_global_report(
    m: &ModelArgs,
    centers: &[String],
    class: Option<&str>,
    label: Option<&str>,
    l: &LocalArgs,
) -> Result<Value> {
    let lm = load_model(m)?;
    let opts = local_options(l)?;
    let mut invs = Vec::new();
    for c in centers {
        let (a, b) = parse_center(c)?;
        invs.push(local_invariant(
            lm.provider.as_ref(),
            &lm.model,
            a,
            b,
            &opts,
        )?);
    }
    let sum = global_sum_test(&invs);
    let mut global = json!({"sum": sum.sum, "sum_zero": sum.sum_zero});
    if let Some(class) = class {
        if let Some(label) = label {
            if !lm
                .provider
                .maximal_types(1, label)?
                .iter()
                .any(|c| c == class)
            {
                return Err(Error::UnknownClass(format!(
                    "{class} is not a maximal type of {label}"
                )));
            }
        }
        let values = odd_fold_values(lm.provider.as_ref(), &invs, class)?;
        global["unbounded"] =
            json!({"class": class, "values": values, "verdict": unbounded_verdict(&values)});
    }
    Ok(json!({"gamma1": lm.gamma1, "o2": lm.o2, "invariants": invs, "global": global}))
}

#[allow(clippy::too_many_arguments)]
fn disk_report(
    preset: &str,
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    d: Option<f64>,
    alpha_max: Option<f64>,
    k_max: Option<u32>,
    verify: bool,
) -> Result<Value> {
    let preset: Preset = preset.parse()?;
    let mut p = ExampleParams::preset(preset);
    p.a = a.unwrap_or(p.a);
    p.b = b.unwrap_or(p.b);
    p.c = c.unwrap_or(p.c);
    p.d = d.unwrap_or(p.d);
    p.alpha_max = alpha_max.unwrap_or(p.alpha_max);
    p.k_max = k_max.unwrap_or(p.k_max);
    p.verify_types = verify;
    let r = example_report_with(preset, &p, cache_dir().as_deref())?;
    serde_json::to_value(r).map_err(|e| Error::Numerical(format!("serialization: {e}")))
}

fn execute(cmd: &Command) -> Result<(Value, bool)> {
    let name = command_name(cmd);
    let result = match cmd {
        Command::Group {
            spec,
            classes,
            irreps,
        } => group_report(spec, *classes, *irreps)?,
        Command::Burnside { spec, mul, table } => burnside_report(spec, mul.as_deref(), *table)?,
        Command::BasicDegree(a) => basic_report(a)?,
        Command::Crossing {
            model,
            alpha,
            beta,
            eps,
            delta,
            beta_max,
        } => {
            let lm = load_model(model)?;
            let window = match (eps, delta) {
                (Some(e), Some(d)) => Some((*e, *d)),
                (None, None) => None,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give both --eps and --delta or neither".into(),
                    ))
                }
            };
            let mut out =
                json!({ "crossing": crossing_numbers(&lm.model, *alpha, *beta, window)? });
            if let Some(bm) = beta_max {
                out["frequencies"] = json!(critical_frequencies(&lm.model, *alpha, *bm)?);
            }
            out
        }
        Command::HopfLocal {
            model,
            alpha,
            beta,
            local,
        } => hopf_local_report(model, *alpha, *beta, local)?,
        Command::HopfGlobal {
            model,
            centers,
            class,
            label,
            local,
        } => hopf_global_report(model, centers, class.as_deref(), label.as_deref(), local)?,
        Command::ModeClasses {
            gamma1,
            mode,
            count,
        } => {
            let e = load_group_engine(gamma1)?;
            let list = enumerate_mode_classes(e.lattice(), *mode)?;
            let mut out =
                json!({"gamma1": e.lattice().group().name(), "mode": mode, "count": list.len()});
            if !count {
                out["classes"] = list
                    .iter()
                    .enumerate()
                    .map(|(i, c)| json!({"index": i + 1, "name": c.name()}))
                    .collect();
            }
            out
        }
        Command::DiskExample {
            preset,
            a,
            b,
            c,
            d,
            alpha_max,
            k_max,
            verify,
        } => disk_report(preset, *a, *b, *c, *d, *alpha_max, *k_max, *verify)?,
        Command::Validate { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let check = validate_report(&v);
            let ok = check.valid;
            return Ok((envelope(name, &check)?, ok));
        }
    };
    Ok((envelope(name, &result)?, true))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Group { .. } => "group",
        Command::Burnside { .. } => "burnside",
        Command::BasicDegree(_) => "basic-degree",
        Command::Crossing { .. } => "crossing",
        Command::HopfLocal { .. } => "hopf-local",
        Command::HopfGlobal { .. } => "hopf-global",
        Command::ModeClasses { .. } => "mode-classes",
        Command::DiskExample { .. } => "disk-example",
        Command::Validate { .. } => "validate",
    }
}

/// Run with explicit arguments and streams; returns the exit status (0 ok, 1 computation error or
/// invalid report, 2 usage error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{}", render(&error_object("usage", &e.to_string())));
            return 2;
        }
    };
    let (doc, ok) = match execute(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            let _ = write!(err, "{}", render(&error_object(e.kind(), &e.to_string())));
            return 1;
        }
    };
    let text = render(&doc);
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                let _ = write!(
                    err,
                    "{}",
                    render(&error_object("io", &format!("{}: {e}", p.display())))
                );
                return 1;
            }
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    if ok {
        0
    } else {
        1
    }
}
