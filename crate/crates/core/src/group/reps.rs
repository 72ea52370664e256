//! Explicit matrices for irreducible representations via regular-representation projectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::characters::IrreducibleRepInfo;
use super::FiniteGroup;
use crate::error::{round_exact, Error, Result};

/// Real orthogonal matrices, one per group element.
#[derive(Clone, Debug)]
pub struct RealRep {
    pub dim: usize,
    pub mats: Vec<DMatrix<f64>>,
}

/// Complex unitary matrices, one per group element.
#[derive(Clone, Debug)]
pub struct ComplexRep {
    pub dim: usize,
    pub mats: Vec<DMatrix<Complex64>>,
}

impl RealRep {
    /// Dimension of the fixed subspace of `h`, from the rank of the averaging projector.
    pub fn fixed_dim(&self, h: &[usize]) -> usize {
        let mut p = DMatrix::<f64>::zeros(self.dim, self.dim);
        for &x in h {
            p += &self.mats[x];
        }
        p /= h.len() as f64;
        p.singular_values().iter().filter(|&&s| s > 0.5).count()
    }
}

impl ComplexRep {
    pub fn fixed_dim(&self, h: &[usize]) -> usize {
        let mut p = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for &x in h {
            p += &self.mats[x];
        }
        p /= Complex64::new(h.len() as f64, 0.0);
        p.singular_values().iter().filter(|&&s| s > 0.5).count()
    }

    /// Underlying real representation of twice the dimension.
    pub fn realify(&self) -> RealRep {
        let d = self.dim;
        let mats = self
            .mats
            .iter()
            .map(|m| {
                DMatrix::from_fn(2 * d, 2 * d, |i, j| {
                    let z = m[(i % d, j % d)];
                    match (i < d, j < d) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                })
            })
            .collect();
        RealRep { dim: 2 * d, mats }
    }
}

/// `dim_R V^H` from the real character.
pub fn fixed_dim(rep: &IrreducibleRepInfo, h: &[usize]) -> Result<usize> {
    let s: f64 = h.iter().map(|&x| rep.real_chi(x)).sum::<f64>() / h.len() as f64;
    Ok(round_exact(s, 1e-6, "fixed-point dimension")? as usize)
}

/// `dim_C W^H` for the complex constituent.
pub fn fixed_dim_complex(rep: &IrreducibleRepInfo, h: &[usize]) -> Result<usize> {
    let s: Complex64 = h.iter().map(|&x| rep.chi(x)).sum::<Complex64>() / h.len() as f64;
    if s.im.abs() > 1e-6 {
        return Err(Error::NonIntegral {
            context: "complex fixed-point dimension".into(),
            value: s.im,
        });
    }
    Ok(round_exact(s.re, 1e-6, "complex fixed-point dimension")? as usize)
}

fn clusters(vals: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some(c) if (vals[i] - vals[*c.last().unwrap()]).abs() < tol => c.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

pub(super) fn complex_irrep(g: &FiniteGroup, info: &IrreducibleRepInfo) -> Result<ComplexRep> {
    let n = g.order();
    let d = info.dim;
    let scale = d as f64 / n as f64;
    let p = DMatrix::<Complex64>::from_fn(n, n, |y, x| info.chi(g.mul(y, g.inv(x))).conj() * scale);
    let eig = p.symmetric_eigen();
    let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    if keep.len() != d * d {
        return Err(Error::Numerical(format!(
            "isotypic rank {} != {}",
            keep.len(),
            d * d
        )));
    }
    let q = DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])]);
    let big = keep.len();
    let regular = |x: usize, m: &DMatrix<Complex64>| -> DMatrix<Complex64> {
        // R(x) m : row y of the result is row x^{-1} y of m
        DMatrix::from_fn(n, m.ncols(), |r, c| m[(g.mul(g.inv(x), r), c)])
    };
    let restricted: Vec<DMatrix<Complex64>> =
        (0..n).map(|x| q.adjoint() * regular(x, &q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee ^ info.index as u64);
    for _ in 0..16 {
        let mut s = DMatrix::<Complex64>::from_fn(big, big, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        s = &s + s.adjoint();
        let mut a = DMatrix::<Complex64>::zeros(big, big);
        for r in &restricted {
            a += r * &s * r.adjoint();
        }
        let e = a.symmetric_eigen();
        let vals: Vec<f64> = e.eigenvalues.iter().copied().collect();
        let cl = clusters(
            &vals,
            1e-7 * (1.0 + vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        );
        if cl[0].len() != d {
            continue;
        }
        let b = DMatrix::from_fn(big, d, |r, c| e.eigenvectors[(r, cl[0][c])]);
        let mats: Vec<DMatrix<Complex64>> =
            restricted.iter().map(|r| b.adjoint() * r * &b).collect();
        return Ok(ComplexRep { dim: d, mats });
    }
    Err(Error::Numerical(
        "could not split isotypic component".into(),
    ))
}

pub(super) fn real_irrep(g: &FiniteGroup, info: &IrreducibleRepInfo) -> Result<RealRep> {
    let n = g.order();
    let d = info.dim;
    let scale = d as f64 / n as f64;
    let p = DMatrix::<f64>::from_fn(n, n, |y, x| info.chi(g.mul(y, g.inv(x))).re * scale);
    let eig = p.symmetric_eigen();
    let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    if keep.len() != d * d {
        return Err(Error::Numerical(format!(
            "isotypic rank {} != {}",
            keep.len(),
            d * d
        )));
    }
    let q = DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])]);
    let big = keep.len();
    let restricted: Vec<DMatrix<f64>> = (0..n)
        .map(|x| {
            let rq = DMatrix::from_fn(n, big, |r, c| q[(g.mul(g.inv(x), r), c)]);
            q.transpose() * rq
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef ^ info.index as u64);
    for _ in 0..16 {
        let mut s = DMatrix::<f64>::from_fn(big, big, |_, _| rng.gen_range(-1.0..1.0));
        s = &s + s.transpose();
        let mut a = DMatrix::<f64>::zeros(big, big);
        for r in &restricted {
            a += r * &s * r.transpose();
        }
        let e = a.symmetric_eigen();
        let vals: Vec<f64> = e.eigenvalues.iter().copied().collect();
        let cl = clusters(
            &vals,
            1e-7 * (1.0 + vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        );
        if cl[0].len() != d {
            continue;
        }
        let b = DMatrix::from_fn(big, d, |r, c| e.eigenvectors[(r, cl[0][c])]);
        let mats: Vec<DMatrix<f64>> = restricted.iter().map(|r| b.transpose() * r * &b).collect();
        return Ok(RealRep { dim: d, mats });
    }
    Err(Error::Numerical(
        "could not split isotypic component".into(),
    ))
}
