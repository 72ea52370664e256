mod common;

use common::{as_map, instance, oracle};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_degree::spectral::{
    crossing_numbers, AffineModel, Branch, CharacteristicModel, MatrixBlock, MatrixFamilyModel,
};

#[test]
fn affine_and_matrix_paths_agree_with_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let (m, alpha0, beta) = instance(&mut rng);
        let expect = oracle(&m, alpha0);
        let affine = crossing_numbers(&m.clone().into(), alpha0, beta, None).unwrap();
        let matrix = crossing_numbers(&m.to_matrix_family().into(), alpha0, beta, None).unwrap();
        assert_eq!(as_map(&affine), expect, "instance {i} affine");
        assert_eq!(as_map(&matrix), expect, "instance {i} matrix");
        for c in affine.crossings.iter().chain(&matrix.crossings) {
            assert_eq!(c.t, c.t_minus - c.t_plus);
        }
    }
}

#[test]
fn oversized_windows_shrink_to_the_same_answer() {
    let m: CharacteristicModel = AffineModel::new(
        1.0,
        1.0,
        vec![
            Branch {
                s: 2.0,
                label: "A".into(),
                mult: 1,
                shift: 0.0,
            },
            Branch {
                s: 2.5,
                label: "A".into(),
                mult: 1,
                shift: 0.0,
            },
            Branch {
                s: 1.0,
                label: "B".into(),
                mult: 2,
                shift: 0.5,
            },
        ],
    )
    .unwrap()
    .into();
    let seeded = crossing_numbers(&m, 2.0, 2.0, None).unwrap();
    for w in [0.1, 1.0, 10.0] {
        let c = crossing_numbers(&m, 2.0, 2.0, Some((w, w))).unwrap();
        assert_eq!(c.crossings, seeded.crossings, "window {w}");
        assert!(c.eps <= w && c.delta <= w);
    }
    assert_eq!(seeded.t("A"), -1);
    assert_eq!(seeded.t("B"), -2);
}

#[test]
fn reversed_branch_counts_positive() {
    let block = |sign: f64| {
        MatrixBlock::new("A", move |alpha, lambda| {
            DMatrix::from_element(1, 1, Complex64::new(sign * (alpha - 1.0), 1.0) - lambda)
        })
    };
    for (sign, t) in [(1.0, -1), (-1.0, 1)] {
        let m: CharacteristicModel = MatrixFamilyModel {
            blocks: vec![block(sign)],
        }
        .into();
        assert_eq!(crossing_numbers(&m, 1.0, 1.0, None).unwrap().t("A"), t);
    }
}

#[test]
fn tangential_touch_has_no_crossing() {
    // the root (alpha - 1)^2 + i touches the axis without crossing it
    let m: CharacteristicModel = MatrixFamilyModel {
        blocks: vec![MatrixBlock::new("A", |alpha, lambda| {
            DMatrix::from_element(1, 1, Complex64::new((alpha - 1.0).powi(2), 1.0) - lambda)
        })],
    }
    .into();
    let c = crossing_numbers(&m, 1.0, 1.0, None).unwrap();
    assert_eq!(c.t("A"), 0);
}
