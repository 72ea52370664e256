//! The ring of four identical cells: coupling spectrum and isotypic structure.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, IrreducibleRepInfo};

const TOL: f64 = 1e-9;

/// Nearest-neighbour coupling on a 4-cycle.
pub fn coupling_matrix(c: f64, d: f64) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |i, j| match (4 + j - i) % 4 {
        0 => c,
        1 | 3 => d,
        _ => 0.0,
    })
}

/// Action of `D4 x Z2` on the cells: `D4` permutes the vertices of the square, `Z2` acts by `-1`.
/// Element `x` of `d4xz2` is `(a, z)` with index `2a + z`.
pub fn cell_action(x: usize) -> DMatrix<f64> {
    let (a, z) = (x / 2, x % 2);
    let sign = if z == 1 { -1.0 } else { 1.0 };
    let mut m = DMatrix::zeros(4, 4);
    for v in 0..4 {
        // r^i: v -> v + i, r^i s: v -> i - v
        let w = if a < 4 {
            (v + a) % 4
        } else {
            (a - 4 + 4 - v) % 4
        };
        m[(w, v)] = sign;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsotypicBlock {
    /// Index of the coupling eigenvalue: 0, 1, 3 in the ordering `c + 2d`, `c`, `c - 2d`.
    pub index: usize,
    pub irrep: String,
    pub mu: f64,
    /// Number of copies of the irreducible.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingSpectrum {
    pub c: f64,
    pub d: f64,
    pub mu: [f64; 3],
    pub numeric: Vec<f64>,
    pub blocks: Vec<IsotypicBlock>,
}

fn projector(g: &FiniteGroup, rep: &IrreducibleRepInfo) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(4, 4);
    for x in 0..g.order() {
        p += cell_action(x) * rep.real_chi(x);
    }
    // real_chi already counts both halves of a complex-type irreducible
    p * (rep.dim as f64 / g.order() as f64)
}

fn rank(m: &DMatrix<f64>) -> usize {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > TOL)
        .count()
}

/// Eigenvalues `{c + 2d, c, c - 2d}` of the coupling, checked against a numeric eigensolve, and the
/// irreducible carried by each eigenspace.
pub fn coupling_spectrum(
    g: &FiniteGroup,
    irreps: &[IrreducibleRepInfo],
    c: f64,
    d: f64,
) -> Result<CouplingSpectrum> {
    if g.order() != 16 || g.factors().len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the cell action needs D4 x Z2, got {}",
            g.name()
        )));
    }
    if !c.is_finite() || !d.is_finite() {
        return Err(Error::InvalidArgument(
            "coupling constants must be finite".into(),
        ));
    }
    let cm = coupling_matrix(c, d);
    let mu = [c + 2.0 * d, c, c - 2.0 * d];
    let mut numeric: Vec<f64> = SymmetricEigen::new(cm.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut expect = vec![mu[0], mu[1], mu[1], mu[2]];
    expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let scale = 1.0 + c.abs() + d.abs();
    if numeric
        .iter()
        .zip(&expect)
        .any(|(x, y)| (x - y).abs() > 1e-12 * scale)
    {
        return Err(Error::Numerical(format!(
            "coupling eigenvalues {numeric:?} differ from {expect:?}"
        )));
    }
    let mut blocks = Vec::new();
    for rep in irreps {
        let p = projector(g, rep);
        let r = rank(&p);
        if r == 0 {
            continue;
        }
        let dim = rep.real_dim;
        // the coupling commutes with the action, so it is scalar on each isotypic component here
        let cp = &cm * &p;
        let found = (0..3).find(|&i| (&cp - &p * mu[i]).norm() <= 1e-9 * scale);
        let i = match found {
            Some(i) => i,
            None => {
                return Err(Error::Numerical(format!(
                    "coupling is not scalar on the {} component",
                    rep.name
                )))
            }
        };
        blocks.push(IsotypicBlock {
            index: [0, 1, 3][i],
            irrep: rep.name.clone(),
            mu: mu[i],
            multiplicity: r / dim,
        });
    }
    blocks.sort_by_key(|b| b.index);
    Ok(CouplingSpectrum {
        c,
        d,
        mu,
        numeric,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::DegreeEngine;

    #[test]
    fn action_is_a_homomorphism() {
        let g = FiniteGroup::from_name("d4xz2").unwrap();
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(cell_action(g.mul(x, y)), cell_action(x) * cell_action(y));
            }
        }
    }

    #[test]
    fn spectrum_and_labels() {
        let e = DegreeEngine::from_name("d4xz2").unwrap();
        let g = e.lattice().group().clone();
        let s = coupling_spectrum(&g, e.irreps(), 1.0, 2.0).unwrap();
        assert_eq!(s.mu, [5.0, 1.0, -3.0]);
        let names: Vec<(usize, &str, usize)> = s
            .blocks
            .iter()
            .map(|b| (b.index, b.irrep.as_str(), b.multiplicity))
            .collect();
        assert_eq!(
            names,
            vec![(0, "V1[D4]", 1), (1, "V2[Z2m]", 1), (3, "V1[D4d]", 1)]
        );
        let flat = coupling_spectrum(&g, e.irreps(), 3.0, 0.0).unwrap();
        assert!(flat.numeric.iter().all(|&x| (x - 3.0).abs() < 1e-12));
    }
}
