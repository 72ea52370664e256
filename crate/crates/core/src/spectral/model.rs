use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One affine characteristic branch `lambda(alpha) = alpha (eta - shift) - s` on an isotypic block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub s: f64,
    pub label: String,
    #[serde(default = "one")]
    pub mult: u32,
    /// Real shift of `eta` on this block (a coupling eigenvalue); zero when absent.
    #[serde(default)]
    pub shift: f64,
}

fn one() -> u32 {
    1
}

/// Characteristic values `lambda = alpha eta - s` with `eta = a + ib`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineModel {
    pub eta: [f64; 2],
    pub branches: Vec<Branch>,
}

impl AffineModel {
    pub fn new(a: f64, b: f64, branches: Vec<Branch>) -> Result<Self> {
        let m = AffineModel {
            eta: [a, b],
            branches,
        };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        let [a, b] = self.eta;
        if a == 0.0 || b == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidArgument(
                "eta = a + ib needs a != 0 and b != 0".into(),
            ));
        }
        for br in &self.branches {
            if !(br.s > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "spectral value {} must be positive",
                    br.s
                )));
            }
            if a - br.shift == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "degenerate branch: a - shift = 0 on {}",
                    br.label
                )));
            }
            if br.mult == 0 {
                return Err(Error::InvalidArgument("zero multiplicity".into()));
            }
        }
        let mut labels: Vec<&str> = self.branches.iter().map(|b| b.label.as_str()).collect();
        labels.sort();
        labels.dedup();
        for l in labels {
            let mut s: Vec<(f64, f64)> = self
                .branches
                .iter()
                .filter(|b| b.label == l)
                .map(|b| (b.shift, b.s))
                .collect();
            s.sort_by(|x, y| x.partial_cmp(y).unwrap());
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "repeated spectral value on {l}"
                )));
            }
        }
        Ok(())
    }

    /// Value of a branch; the imaginary part is taken with `|b|` so that crossings happen in the upper half-plane.
    pub fn value(&self, br: &Branch, alpha: f64) -> Complex64 {
        Complex64::new(
            alpha * (self.eta[0] - br.shift) - br.s,
            alpha * self.eta[1].abs(),
        )
    }

    /// `alpha` where the branch meets the imaginary axis.
    pub fn critical_alpha(&self, br: &Branch) -> f64 {
        br.s / (self.eta[0] - br.shift)
    }

    /// The same data as a matrix family of diagonal blocks `lambda(alpha) - lambda`.
    pub fn to_matrix_family(&self) -> MatrixFamilyModel {
        let mut labels: Vec<String> = self.branches.iter().map(|b| b.label.clone()).collect();
        labels.sort();
        labels.dedup();
        let blocks = labels
            .into_iter()
            .map(|label| {
                let own: Vec<Branch> = self
                    .branches
                    .iter()
                    .filter(|b| b.label == label)
                    .cloned()
                    .collect();
                let me = self.clone();
                let n: usize = own.iter().map(|b| b.mult as usize).sum();
                MatrixBlock::new(label, move |alpha, lambda| {
                    let mut m = DMatrix::zeros(n, n);
                    let mut i = 0;
                    for b in &own {
                        for _ in 0..b.mult {
                            m[(i, i)] = me.value(b, alpha) - lambda;
                            i += 1;
                        }
                    }
                    m
                })
            })
            .collect();
        MatrixFamilyModel { blocks }
    }
}

type BlockFn = dyn Fn(f64, Complex64) -> DMatrix<Complex64> + Send + Sync;

/// A per-isotypic finite matrix function `(alpha, lambda) -> Delta_alpha^j(lambda)`.
#[derive(Clone)]
pub struct MatrixBlock {
    pub label: String,
    f: Arc<BlockFn>,
}

impl MatrixBlock {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, Complex64) -> DMatrix<Complex64> + Send + Sync + 'static,
    {
        MatrixBlock {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, alpha: f64, lambda: Complex64) -> DMatrix<Complex64> {
        (self.f)(alpha, lambda)
    }

    pub fn det(&self, alpha: f64, lambda: Complex64) -> Complex64 {
        let m = self.eval(alpha, lambda);
        if m.nrows() == 0 {
            return Complex64::new(1.0, 0.0);
        }
        m.determinant()
    }
}

impl fmt::Debug for MatrixBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixBlock")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixFamilyModel {
    pub blocks: Vec<MatrixBlock>,
}

#[derive(Clone, Debug)]
pub enum CharacteristicModel {
    Affine(AffineModel),
    Matrix(MatrixFamilyModel),
}

impl CharacteristicModel {
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = match self {
            CharacteristicModel::Affine(m) => m.branches.iter().map(|b| b.label.clone()).collect(),
            CharacteristicModel::Matrix(m) => m.blocks.iter().map(|b| b.label.clone()).collect(),
        };
        v.sort();
        v.dedup();
        v
    }
}

impl From<AffineModel> for CharacteristicModel {
    fn from(m: AffineModel) -> Self {
        CharacteristicModel::Affine(m)
    }
}

impl From<MatrixFamilyModel> for CharacteristicModel {
    fn from(m: MatrixFamilyModel) -> Self {
        CharacteristicModel::Matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let br = |s| Branch {
            s,
            label: "0".into(),
            mult: 1,
            shift: 0.0,
        };
        assert!(AffineModel::new(0.0, 1.0, vec![br(1.0)]).is_err());
        assert!(AffineModel::new(1.0, 0.0, vec![br(1.0)]).is_err());
        assert!(AffineModel::new(1.0, 1.0, vec![br(1.0), br(1.0)]).is_err());
        let m = AffineModel::new(2.0, 1.0, vec![br(3.0)]).unwrap();
        assert_eq!(m.critical_alpha(&m.branches[0]), 1.5);
        let v = m.value(&m.branches[0], 1.5);
        assert!(v.re.abs() < 1e-15 && (v.im - 1.5).abs() < 1e-15);
        let mf = m.to_matrix_family();
        assert!(mf.blocks[0].det(1.5, v).norm() < 1e-15);
    }
}
