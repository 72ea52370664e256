//! Acceptance run: one PASS/FAIL line per criterion, with pinned tolerances and time limits.
#![allow(clippy::needless_range_loop)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_degree::burnside::{generator_product, multiplication_table};
use twisted_degree::cli::run;
use twisted_degree::degree::{circle, maximal_coefficient, winding_of, DegreeEngine};
use twisted_degree::disk::{
    bessel_zeros, coupling_matrix, coupling_spectrum, critical_set, example_report,
    preset_families, preset_model, ExampleParams, ExampleReport, Preset,
};
use twisted_degree::group::{FiniteGroup, SubgroupClassLattice};
use twisted_degree::hopf::Unbounded;
use twisted_degree::o2::{
    coefficient_nonzero_check, enumerate_mode_classes, find_class, maximal_twisted_types_o2,
    verify_maximal_type,
};
use twisted_degree::spectral::{crossing_numbers, CharacteristicModel};

/// Lowest zero of `J_0` and the half-width it must hit.
const S10: f64 = 2.404_825_557_7;
const S10_TOL: f64 = 1e-10;
/// Coupling eigenvalues are sums of at most three terms of size `|c| + 2|d|`; a few ulps of that.
const SPECTRUM_TOL: f64 = 1e-12;
const LATTICE_SECS: f64 = 10.0;
const MODES_SECS: f64 = 60.0;
const BESSEL_SECS: f64 = 5.0;
const RANDOM_SPECTRA: usize = 1000;
const RANDOM_MODELS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice() -> SubgroupClassLattice {
    SubgroupClassLattice::new(&FiniteGroup::from_name("d4xz2").unwrap()).unwrap()
}

fn class_count() -> Outcome {
    let g = FiniteGroup::from_name("d4xz2").map_err(|e| e.to_string())?;
    let t = Instant::now();
    let lat = SubgroupClassLattice::new(&g).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let brute = common::conjugacy_classes(&g, &common::all_subgroups(&g)).len();
    ensure(lat.len() == 27 && brute == 27, || {
        format!("{} classes, brute force {brute}", lat.len())
    })?;
    ensure(secs < LATTICE_SECS, || format!("{secs:.2} s"))?;
    Ok(format!("27 classes in {secs:.3} s"))
}

fn mode_counts() -> Outcome {
    let lat = lattice();
    let t = Instant::now();
    let zero = enumerate_mode_classes(&lat, 0).map_err(|e| e.to_string())?;
    let one = enumerate_mode_classes(&lat, 1).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    ensure(zero.len() == 118 && one.len() == 341, || {
        format!("{} and {}", zero.len(), one.len())
    })?;
    ensure(common::mode_zero_count(&lat) == 118, || {
        "direct count of mode 0 disagrees".into()
    })?;
    find_class(&zero, "O(2) x D4p").map_err(|e| e.to_string())?;
    find_class(&one, "D1 x D4p").map_err(|e| e.to_string())?;
    ensure(secs < MODES_SECS, || format!("{secs:.2} s"))?;
    Ok(format!("118 / 341 classes in {secs:.3} s"))
}

fn burnside() -> Outcome {
    let lat = lattice();
    let g = lat.group();
    let n = lat.len();
    let marks: Vec<Vec<i64>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|h| common::mark(g, &lat.class(l).rep, &lat.class(h).rep))
                .collect()
        })
        .collect();
    let index = |c: usize| (g.order() / lat.class(c).order()) as i64;
    for h in 0..n {
        for k in 0..n {
            let p = generator_product(&lat, h, k).map_err(|e| e.to_string())?;
            for (l, row) in marks.iter().enumerate() {
                let lhs: i64 = p.iter().map(|&(t, c)| c * row[t]).sum();
                ensure(lhs == row[h] * row[k], || format!("({h})({k}) at mark {l}"))?;
            }
            let total: i64 = p.iter().map(|&(t, c)| c * index(t)).sum();
            ensure(total == index(h) * index(k), || {
                format!("conservation at ({h})({k})")
            })?;
        }
    }
    let t = multiplication_table(&lat).map_err(|e| e.to_string())?;
    let times = |x: &[(usize, i64)], c: usize| {
        let mut v = vec![0i64; n];
        for &(a, m) in x {
            for &(b, e) in &t[a][c] {
                v[b] += m * e;
            }
        }
        v
    };
    for h in 0..n {
        for k in 0..n {
            ensure(t[h][k] == t[k][h], || {
                format!("commutativity at ({h})({k})")
            })?;
            for l in 0..n {
                ensure(times(&t[h][k], l) == times(&t[k][l], h), || {
                    format!("associativity at ({h})({k})({l})")
                })?;
            }
        }
    }
    Ok(format!(
        "{} products against the table of marks, ring axioms on {} triples",
        n * n,
        n * n * n
    ))
}

fn degree_properties() -> Outcome {
    let e = DegreeEngine::from_name("d4xz2").map_err(|e| e.to_string())?;
    let mut checked = 0;
    for rep in e.irreps() {
        let j = rep.index;
        let one = e.basic(1, j).map_err(|e| e.to_string())?.degree;
        for k in 2..=6 {
            ensure(
                e.fold(&one, k).map_err(|e| e.to_string())?
                    == e.basic(k, j).map_err(|e| e.to_string())?.degree,
                || format!("fold {k} of {}", rep.name),
            )?;
        }
        let gm = e.gamma(j).map_err(|e| e.to_string())?;
        ensure(
            e.mul(&gm, &gm).map_err(|e| e.to_string())? == e.unit(),
            || format!("gamma({})^2", rep.name),
        )?;
        for k in 1..=6 {
            let d = e.basic(k, j).map_err(|e| e.to_string())?.degree;
            for ty in e
                .twisted()
                .orbit_types(rep, k)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|t| t.maximal)
            {
                let want =
                    maximal_coefficient(ty.fixed_dim, ty.weyl_order).map_err(|e| e.to_string())?;
                ensure(d.coeff(&ty.name) == want, || {
                    format!("coefficient of {} in {} fold {k}", ty.name, rep.name)
                })?;
                checked += 1;
            }
        }
    }
    for n in -5i32..=5 {
        let c = circle(Complex64::new(0.0, 0.0), 1.0);
        ensure(
            winding_of(|t| c(t).powi(n)).map_err(|e| e.to_string())? == n as i64,
            || format!("winding of z^{n}"),
        )?;
    }
    Ok(format!(
        "{} irreducibles, folds <= 6, {checked} maximal coefficients, windings |n| <= 5",
        e.irreps().len()
    ))
}

fn crossings() -> Outcome {
    let mut centers = 0;
    for preset in [Preset::Single, Preset::Coupled] {
        let params = ExampleParams {
            alpha_max: 100.0,
            k_max: 5,
            ..ExampleParams::preset(preset)
        };
        let (_, _, families) = preset_families(preset, &params).map_err(|e| e.to_string())?;
        let table = bessel_zeros(5, 5).map_err(|e| e.to_string())?;
        let set = critical_set(
            params.a,
            params.b,
            &families,
            &table,
            params.alpha_max,
            params.k_max,
        )
        .map_err(|e| e.to_string())?;
        let model: CharacteristicModel = preset_model(&params, &families, &table)
            .map_err(|e| e.to_string())?
            .into();
        for c in set
            .centers
            .iter()
            .filter(|c| c.n <= 5 && c.j <= 5 && c.k <= 5)
        {
            let beta = c.k as f64 * c.beta;
            let x = crossing_numbers(&model, c.alpha, beta, None).map_err(|e| e.to_string())?;
            ensure(x.t(&c.label) == -1, || {
                format!("{preset:?} {c:?}: t = {}", x.t(&c.label))
            })?;
            // halving the window from the one found leaves every value unchanged
            for s in [0.5, 0.25] {
                let y = crossing_numbers(&model, c.alpha, beta, Some((x.eps * s, x.delta * s)))
                    .map_err(|e| e.to_string())?;
                ensure(y.crossings == x.crossings, || {
                    format!("{preset:?} {c:?}: window {s}")
                })?;
            }
            centers += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..RANDOM_MODELS {
        let (m, alpha0, beta) = common::instance(&mut rng);
        let want = common::oracle(&m, alpha0);
        let a =
            crossing_numbers(&m.clone().into(), alpha0, beta, None).map_err(|e| e.to_string())?;
        let b = crossing_numbers(&m.to_matrix_family().into(), alpha0, beta, None)
            .map_err(|e| e.to_string())?;
        ensure(
            common::as_map(&a) == want && common::as_map(&b) == want,
            || format!("random instance {i}"),
        )?;
    }
    Ok(format!("{centers} centers at t = -1, stable under window halving; {RANDOM_MODELS} affine/matrix agreements"))
}

fn bessel() -> Outcome {
    let t = Instant::now();
    let table = bessel_zeros(20, 10).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    table.check().map_err(|e| e.to_string())?;
    let s = table.get(1, 0);
    let (lo, hi) = (S10 - S10_TOL, S10 + S10_TOL);
    ensure((s - S10).abs() <= S10_TOL, || format!("s_(1,0) = {s}"))?;
    let bracket = common::bessel_sign(0, lo).zip(common::bessel_sign(0, hi));
    ensure(bracket.is_some_and(|(a, b)| a * b < 0.0), || {
        format!("series does not bracket a zero in [{lo}, {hi}]")
    })?;
    for j in 0..=10 {
        let v = &table.zeros[j];
        for n in 1..v.len() {
            ensure(v[n] > v[n - 1], || format!("monotone in column {j}"))?;
            if j >= 1 {
                ensure(v[n] - v[n - 1] > std::f64::consts::PI, || {
                    format!("gap in column {j}")
                })?;
            }
        }
        ensure(table.get(1, j) > 2.0 * ((j + 1) as f64).sqrt(), || {
            format!("lower bound for s_(1,{j})")
        })?;
        if j >= 1 {
            for n in 1..=20 {
                ensure(table.get(n, j - 1) < table.get(n, j), || {
                    format!("interlacing at ({n}, {j})")
                })?;
                if n < 20 {
                    ensure(table.get(n, j) < table.get(n + 1, j - 1), || {
                        format!("interlacing at ({n}, {j})")
                    })?;
                }
            }
        }
    }
    ensure(secs < BESSEL_SECS, || format!("{secs:.2} s"))?;
    Ok(format!(
        "s_(1,0) = {s:.12} bracketed by the series; n <= 20, j <= 10 in {secs:.3} s"
    ))
}

fn coupling() -> Outcome {
    let e = DegreeEngine::from_name("d4xz2").map_err(|e| e.to_string())?;
    let g = e.lattice().group();
    let vectors = [
        (0, "V1[D4]", DVector::from_vec(vec![1.0, 1.0, 1.0, 1.0])),
        (1, "V2[Z2m]", DVector::from_vec(vec![1.0, 0.0, -1.0, 0.0])),
        (3, "V1[D4d]", DVector::from_vec(vec![1.0, -1.0, 1.0, -1.0])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..RANDOM_SPECTRA {
        let c = rng.gen_range(-5.0..5.0);
        let d = rng.gen_range(0.01..5.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let cs = coupling_spectrum(g, e.irreps(), c, d).map_err(|e| e.to_string())?;
        let m = coupling_matrix(c, d);
        let tol = SPECTRUM_TOL * (1.0 + c.abs() + d.abs());
        let closed = [c + 2.0 * d, c, c - 2.0 * d];
        let mut labels = Vec::new();
        for (slot, (index, irrep, v)) in vectors.iter().enumerate() {
            ensure((&m * v - v * closed[slot]).norm() < tol, || {
                format!("sample {i}: eigenvector {index}")
            })?;
            ensure((cs.mu[slot] - closed[slot]).abs() < tol, || {
                format!("sample {i}: mu[{slot}]")
            })?;
            let b = cs
                .blocks
                .iter()
                .find(|b| b.index == *index)
                .ok_or_else(|| format!("sample {i}: no block {index}"))?;
            ensure(b.irrep == *irrep && b.multiplicity == 1, || {
                format!("sample {i}: block {index} is {}", b.irrep)
            })?;
            labels.push(b.index);
        }
        ensure(labels == [0, 1, 3] && cs.blocks.len() == 3, || {
            format!("sample {i}: labels {labels:?}")
        })?;
        let mut numeric = cs.numeric.clone();
        numeric.sort_by(f64::total_cmp);
        let mut want = vec![c + 2.0 * d, c, c, c - 2.0 * d];
        want.sort_by(f64::total_cmp);
        ensure(
            numeric.iter().zip(&want).all(|(x, y)| (x - y).abs() < tol),
            || format!("sample {i}: numeric spectrum"),
        )?;
    }
    Ok(format!(
        "{RANDOM_SPECTRA} random couplings at {SPECTRUM_TOL:e}, blocks at 0, 1, 3"
    ))
}

fn report(preset: Preset) -> Result<ExampleReport, String> {
    example_report(preset, &ExampleParams::preset(preset)).map_err(|e| e.to_string())
}

fn verdicts() -> Outcome {
    let single = report(Preset::Single)?;
    for c in &single.centers {
        let (j, k) = (c.center.j, c.center.k);
        let want = if j == 0 {
            format!("(O(2) x Z2)^{{(O(2) x Z1)}} x_{{Z2}}^{{Z{k}}} Z{}", 2 * k)
        } else {
            format!(
                "(D{0} x Z2)^{{(D{0}^{{D{j}}} x_{{Z2}}^{{Z1}} Z2)}} x_{{Z2}}^{{Z{k}}} Z{1}",
                2 * j,
                2 * k
            )
        };
        ensure(
            c.verdicts
                .iter()
                .any(|v| v.class == want && v.coefficient != 0),
            || format!("single: {want} missing at {:?}", c.center),
        )?;
    }
    let coupled = report(Preset::Coupled)?;
    for c in &coupled.centers {
        let want = match c.center.label.split_once(':').map(|x| x.1) {
            Some("V1[D4]") | Some("V1[D4d]") => 1,
            Some("V2[Z2m]") => 3,
            other => return Err(format!("unexpected block {other:?}")),
        };
        ensure(
            c.verdicts.len() == want && c.verdicts.iter().all(|v| v.coefficient != 0),
            || format!("coupled: {} classes at {:?}", c.verdicts.len(), c.center),
        )?;
    }
    let e = DegreeEngine::from_name("d4xz2").map_err(|e| e.to_string())?;
    let mut checks = 0;
    for label in ["V1[D4d]", "V2[Z2m]"] {
        for m in 1..=3 {
            for k in 1..=3 {
                for t in maximal_twisted_types_o2(&e, m, k, label).map_err(|e| e.to_string())? {
                    let (_, nonzero) = coefficient_nonzero_check(t.fixed_dim, t.weyl_order)
                        .map_err(|e| e.to_string())?;
                    ensure(nonzero, || format!("{label} m={m} k={k}: {}", t.name))?;
                    checks += 1;
                }
            }
        }
    }
    for r in [&single, &coupled] {
        ensure(
            !r.global.unbounded.is_empty()
                && r.global
                    .unbounded
                    .iter()
                    .all(|u| u.verdict == Unbounded::Forced),
            || format!("{:?}: unbounded branch not forced", r.preset),
        )?;
    }
    Ok(format!(
        "{} + {} centers, {checks} nonzero coefficients, unbounded branches forced",
        single.centers.len(),
        coupled.centers.len()
    ))
}

fn discretization() -> Outcome {
    let mut n = 0;
    for preset in [Preset::Single, Preset::Coupled] {
        let params = ExampleParams {
            verify_types: true,
            ..ExampleParams::preset(preset)
        };
        let r = example_report(preset, &params).map_err(|e| e.to_string())?;
        n += r.centers.iter().map(|c| c.classes.len()).sum::<usize>();
    }
    let e = DegreeEngine::from_name("d4xz2").map_err(|e| e.to_string())?;
    for label in ["V1[D4]", "V1[D4d]", "V2[Z2m]"] {
        for k in 1..=3 {
            for t in maximal_twisted_types_o2(&e, 1, k, label).map_err(|e| e.to_string())? {
                verify_maximal_type(&e, label, k, &t).map_err(|e| format!("{label} k={k}: {e}"))?;
                n += 1;
            }
        }
    }
    Ok(format!(
        "{n} maximal types identical in the truncations D_N and D_2N"
    ))
}

fn determinism() -> Outcome {
    let cli = |preset: &str| {
        let mut out = Vec::new();
        let code = run(
            ["twdeg", "disk-example", "--preset", preset],
            &mut out,
            &mut Vec::new(),
        );
        (code, out)
    };
    for preset in ["single", "coupled"] {
        let first = cli(preset);
        ensure(first.0 == 0, || format!("{preset}: exit {}", first.0))?;
        ensure(cli(preset) == first, || {
            format!("{preset}: sequential runs differ")
        })?;
        let threads: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(move || cli(preset)))
            .collect();
        for t in threads {
            ensure(
                t.join().map_err(|_| "thread panicked".to_string())? == first,
                || format!("{preset}: concurrent runs differ"),
            )?;
        }
        let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join(format!("tests/golden/disk-{preset}.json"));
        let stored = std::fs::read(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        ensure(stored == first.1, || {
            format!("{preset}: differs from the stored report")
        })?;
    }
    Ok("both presets byte-identical across sequential, concurrent and stored runs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("subgroup classes of D4 x Z2", class_count),
        ("mode class counts", mode_counts),
        ("Burnside ring against orbit counting", burnside),
        ("basic degree properties", degree_properties),
        ("crossing numbers", crossings),
        ("Bessel zero table", bessel),
        ("coupling spectrum and isotypic blocks", coupling),
        ("verdicts and coefficient checks", verdicts),
        ("discretization stabilization", discretization),
        ("determinism", determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
