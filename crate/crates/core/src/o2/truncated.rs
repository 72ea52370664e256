//! Brute-force verification inside `D_N x Gamma1`, with `O(2)` replaced by its dihedral subgroup `D_N`.

use nalgebra::DMatrix;

use super::maximal::{O2TwistedType, Realization};
use crate::degree::DegreeEngine;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Data recomputed from scratch in one truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCheck {
    pub n: usize,
    pub isotropy_order: usize,
    pub normalizer_order: usize,
    pub fixed_dim: usize,
    pub weyl_order: usize,
}

struct Truncation {
    n: usize,
    k: usize,
    group: FiniteGroup,
    gamma_order: usize,
}

impl Truncation {
    fn o2_matrix(&self, a: usize) -> DMatrix<f64> {
        let (j, e) = (a % self.n, a / self.n);
        let t = std::f64::consts::TAU * (self.k * j) as f64 / self.n as f64;
        let r = DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        if e == 0 {
            r
        } else {
            r * DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
        }
    }

    fn act(&self, x: usize, rho: &[DMatrix<f64>], v: &DMatrix<f64>) -> DMatrix<f64> {
        self.o2_matrix(x / self.gamma_order) * v * rho[x % self.gamma_order].transpose()
    }

    fn normalizer(&self, s: &[usize]) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&x| {
                s.iter()
                    .all(|&a| s.binary_search(&self.group.conj(x, a)).is_ok())
            })
            .collect()
    }
}

fn fail(what: String) -> Error {
    Error::Numerical(format!("truncated check: {what}"))
}

/// Recompute isotropy, normalizer, fixed dimension and twisted Weyl order of a maximal type in `D_n x Gamma1`.
pub fn check_in_truncation(
    engine: &DegreeEngine,
    label: &str,
    k: usize,
    ty: &O2TwistedType,
    n: usize,
) -> Result<TruncatedCheck> {
    let w = ty
        .witness
        .as_ref()
        .ok_or_else(|| Error::Missing("type has no witness".into()))?;
    let rep = &engine.irreps()[engine.irrep_index(label)?];
    let rho = &rep
        .real
        .as_ref()
        .ok_or_else(|| Error::Missing("representation matrices".into()))?
        .mats;
    let gamma = engine.lattice().group();
    let group = FiniteGroup::direct_product(&FiniteGroup::dihedral(n)?, gamma)?;
    let tr = Truncation {
        n,
        k,
        group,
        gamma_order: gamma.order(),
    };
    let v = &w.vector;
    let iso: Vec<usize> = (0..tr.group.order())
        .filter(|&x| (tr.act(x, rho, v) - v).norm() < 1e-8)
        .collect();
    let claimed = |r: &Realization| r.instantiate(n, gamma.order());
    if iso != claimed(&w.orbit_type) {
        return Err(fail(format!(
            "isotropy of the witness differs from {} at N = {n}",
            ty.orbit_type
        )));
    }
    let norm = tr.normalizer(&iso);
    if norm != claimed(&w.normalizer) {
        return Err(fail(format!(
            "normalizer differs from {} at N = {n}",
            ty.normalizer
        )));
    }
    // fixed dimension of the isotropy: rank of the averaging projector on R^{2 x d}
    let d = 2 * v.ncols();
    let mut p = DMatrix::<f64>::zeros(d, d);
    for c in 0..d {
        let mut e = DMatrix::<f64>::zeros(2, v.ncols());
        e[(c % 2, c / 2)] = 1.0;
        let mut acc = DMatrix::<f64>::zeros(2, v.ncols());
        for &x in &iso {
            acc += tr.act(x, rho, &e);
        }
        for r in 0..d {
            p[(r, c)] = acc[(r % 2, r / 2)] / iso.len() as f64;
        }
    }
    let fixed_dim = p.singular_values().iter().filter(|&&s| s > 0.5).count();
    // N \ H must act by -1 on the fixed line
    for &x in &norm {
        if iso.binary_search(&x).is_err() && (tr.act(x, rho, v) + v).norm() > 1e-8 {
            return Err(fail("normalizer element does not act by -1".into()));
        }
    }
    let twisted_normalizer = tr
        .normalizer(&norm)
        .into_iter()
        .filter(|&x| {
            iso.iter()
                .all(|&a| iso.binary_search(&tr.group.conj(x, a)).is_ok())
        })
        .count();
    Ok(TruncatedCheck {
        n,
        isotropy_order: iso.len(),
        normalizer_order: norm.len(),
        fixed_dim,
        weyl_order: twisted_normalizer / norm.len(),
    })
}

/// Check a maximal type in `D_{8k} x Gamma1` and `D_{16k} x Gamma1` and require stabilization.
pub fn verify_maximal_type(
    engine: &DegreeEngine,
    label: &str,
    k: usize,
    ty: &O2TwistedType,
) -> Result<()> {
    let a = check_in_truncation(engine, label, k, ty, 8 * k)?;
    let b = check_in_truncation(engine, label, k, ty, 16 * k)?;
    if a.fixed_dim != 1 {
        return Err(fail(format!(
            "fixed subspace of {} has dimension {}",
            ty.orbit_type, a.fixed_dim
        )));
    }
    if a.normalizer_order != 2 * a.isotropy_order || b.normalizer_order != 2 * b.isotropy_order {
        return Err(fail("Weyl group of the orbit type is not Z2".into()));
    }
    if (a.fixed_dim, a.weyl_order) != (b.fixed_dim, b.weyl_order) {
        return Err(Error::Unstable(format!(
            "truncated data changed between N = {} and N = {}",
            a.n, b.n
        )));
    }
    if a.weyl_order != ty.weyl_order || 2 * a.fixed_dim != ty.fixed_dim {
        return Err(fail(format!(
            "twisted Weyl order {} vs claimed {}",
            a.weyl_order, ty.weyl_order
        )));
    }
    Ok(())
}
