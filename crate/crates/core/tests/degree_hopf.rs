use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use twisted_degree::burnside::TwistedModuleElement;
use twisted_degree::degree::{circle, maximal_coefficient, winding_of, DegreeEngine};
use twisted_degree::hopf::{
    global_sum_test, local_invariant, local_verdict, period_bound, LocalOptions, Verdict,
};
use twisted_degree::spectral::{
    AffineModel, Branch, CharacteristicModel, MatrixBlock, MatrixFamilyModel,
};

fn d4xz2() -> DegreeEngine {
    DegreeEngine::from_name("d4xz2").unwrap()
}

#[test]
fn folding_commutes_with_basic_degrees() {
    let e = d4xz2();
    for j in 0..e.irreps().len() {
        let one = e.basic(1, j).unwrap().degree;
        for k in 2..=6 {
            assert_eq!(
                e.fold(&one, k).unwrap(),
                e.basic(k, j).unwrap().degree,
                "{} fold {k}",
                e.irreps()[j].name
            );
        }
    }
}

#[test]
fn gamma_degrees_square_to_one() {
    let e = d4xz2();
    for j in 0..e.irreps().len() {
        let g = e.gamma(j).unwrap();
        assert_eq!(e.mul(&g, &g).unwrap(), e.unit(), "{}", e.irreps()[j].name);
    }
}

#[test]
fn maximal_coefficients_have_closed_form() {
    let e = d4xz2();
    for rep in e.irreps() {
        for k in 1..=3 {
            let d = e.basic(k, rep.index).unwrap().degree;
            for t in e
                .twisted()
                .orbit_types(rep, k)
                .unwrap()
                .into_iter()
                .filter(|t| t.maximal)
            {
                assert_eq!(
                    d.coeff(&t.name),
                    maximal_coefficient(t.fixed_dim, t.weyl_order).unwrap(),
                    "{} {}",
                    rep.name,
                    t.name
                );
                assert_ne!(d.coeff(&t.name), 0);
            }
        }
    }
}

#[test]
fn winding_of_powers() {
    for n in -5i32..=5 {
        let c = circle(Complex64::new(0.0, 0.0), 1.0);
        assert_eq!(winding_of(|t| c(t).powi(n)).unwrap(), n as i64);
    }
}

fn branch(s: f64, label: &str) -> Branch {
    Branch {
        s,
        label: label.into(),
        mult: 1,
        shift: 0.0,
    }
}

#[test]
fn two_resonances_sum_folded_degrees() {
    let e = d4xz2();
    // roots (alpha - 2) + i and (alpha - 2) + 2i cross the axis together: resonances k = 1 and k = 2 of beta0 = 1
    let block = |label: &str, beta: f64| {
        MatrixBlock::new(label, move |alpha, lambda| {
            DMatrix::from_element(1, 1, Complex64::new(alpha - 2.0, beta) - lambda)
        })
    };
    let model: CharacteristicModel = MatrixFamilyModel {
        blocks: vec![block("V2[Z2m]", 1.0), block("V1[D4d]", 2.0)],
    }
    .into();
    let opts = LocalOptions {
        beta_max: Some(3.0),
        ..LocalOptions::default()
    };
    let inv = local_invariant(&e, &model, 2.0, 1.0, &opts).unwrap();
    assert_eq!(
        inv.crossings.keys().copied().collect::<Vec<_>>(),
        vec![1, 2]
    );
    let a = e.irrep_index("V2[Z2m]").unwrap();
    let b = e.irrep_index("V1[D4d]").unwrap();
    for (k, label) in [(1, "V2[Z2m]"), (2, "V1[D4d]")] {
        assert_eq!(inv.crossings[&k].t(label), -1);
    }
    let hand = e
        .basic(1, a)
        .unwrap()
        .degree
        .add(&e.fold(&e.basic(1, b).unwrap().degree, 2).unwrap())
        .scale(-1);
    assert_eq!(inv.combined, hand);
}

#[test]
fn invariant_maps_through_fold() {
    let e = d4xz2();
    let model: CharacteristicModel = AffineModel::new(1.0, 1.0, vec![branch(3.0, "V2[Z2m]")])
        .unwrap()
        .into();
    let base = local_invariant(&e, &model, 3.0, 3.0, &LocalOptions::default()).unwrap();
    for k in 2..=4u32 {
        let folded =
            local_invariant(&e, &model, 3.0, 3.0 / k as f64, &LocalOptions::default()).unwrap();
        assert_eq!(folded.combined, e.fold(&base.combined, k).unwrap());
    }
}

#[test]
fn stationary_prefix_acts_on_the_body() {
    let e = d4xz2();
    let model: CharacteristicModel = AffineModel::new(1.0, 1.0, vec![branch(3.0, "V1[D4]")])
        .unwrap()
        .into();
    let opts = LocalOptions {
        stationary: Some(twisted_degree::hopf::StationaryBlocks {
            rho: [("V1[D4z]".to_string(), -1)].into_iter().collect(),
            m0: [("V1[D4z]".to_string(), 1)].into_iter().collect(),
        }),
        ..Default::default()
    };
    let inv = local_invariant(&e, &model, 3.0, 3.0, &opts).unwrap();
    assert!(!inv.prefix_assumed_trivial);
    assert_eq!(inv.combined, e.act(&inv.prefix, &inv.body).unwrap());
    let g = e.gamma(e.irrep_index("V1[D4z]").unwrap()).unwrap();
    assert_eq!(inv.prefix, g);
}

#[test]
fn period_bound_scales() {
    let (p, _) = period_bound(1.0, 1.0, 1.0).unwrap();
    assert_eq!(p, 2.0);
    let (q, _) = period_bound(3.0, 3.0, 1.0).unwrap();
    assert!((q - p / 3.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn period_times_frequency_is_two_pi(a in 1e-3f64..1e3, l in 1e-3f64..1e3, n in 1e-3f64..1e3) {
        let (p, b) = period_bound(a, l, n).unwrap();
        prop_assert!((p * b - std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn sum_test_is_order_independent(signs in prop::collection::vec(prop::bool::ANY, 1..6), seed in 0usize..100) {
        let e = DegreeEngine::from_name("d4").unwrap();
        let labels: Vec<String> = e.irreps().iter().map(|r| r.name.clone()).collect();
        let mut invs = Vec::new();
        for (i, s) in signs.iter().enumerate() {
            let label = &labels[(seed + i) % labels.len()];
            // reversed branches (negative a) cross the other way
            let a = if *s { 1.0 } else { -1.0 };
            let sv = 2.0 + i as f64;
            let m: CharacteristicModel = AffineModel::new(a, 1.0, vec![branch(sv, label)]).unwrap().into();
            let alpha = sv / a;
            if alpha > 0.0 {
                invs.push(local_invariant(&e, &m, alpha, alpha, &LocalOptions::default()).unwrap());
            }
        }
        let fwd = global_sum_test(&invs);
        invs.reverse();
        let back = global_sum_test(&invs);
        prop_assert_eq!(fwd, back);
    }

    #[test]
    fn verdicts_never_come_from_zero_coefficients(mask in prop::collection::vec(prop::bool::ANY, 0..16)) {
        let e = d4xz2();
        let model: CharacteristicModel = AffineModel::new(1.0, 1.0, vec![branch(3.0, "V2[Z2m]")]).unwrap().into();
        let mut inv = local_invariant(&e, &model, 3.0, 3.0, &LocalOptions::default()).unwrap();
        // zero out a random subset of coefficients
        let mut padded = TwistedModuleElement::zero();
        for (i, (n, c)) in inv.combined.iter().enumerate() {
            if !mask.get(i).copied().unwrap_or(false) {
                padded.add_term(n, c);
            }
        }
        inv.combined = padded;
        for v in local_verdict(&e, &inv).unwrap() {
            prop_assert_eq!(v.verdict == Verdict::BranchWithSymmetry, inv.combined.coeff(&v.class) != 0);
            prop_assert_eq!(v.coefficient, inv.combined.coeff(&v.class));
        }
    }
}
