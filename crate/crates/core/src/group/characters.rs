//! Complex character tables from class-algebra eigenvectors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::reps::{self, ComplexRep, RealRep};
use super::{FiniteGroup, SubgroupClassLattice};
use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-9;

/// Complex characters, one row per irreducible, one column per element class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub chars: Vec<Vec<Complex64>>,
    pub indicators: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IrrepKind {
    Real,
    Complex,
}

/// A real irreducible representation with its complex character data.
#[derive(Clone, Debug)]
pub struct IrreducibleRepInfo {
    pub index: usize,
    pub name: String,
    /// Character of one complex constituent, per element class.
    pub character: Vec<Complex64>,
    pub dim: usize,
    pub indicator: i32,
    pub kind: IrrepKind,
    pub real_dim: usize,
    /// Class name of the kernel (when a lattice was supplied).
    pub kernel: Option<String>,
    pub real: Option<RealRep>,
    pub complex: Option<ComplexRep>,
    class_of: Vec<usize>,
}

impl IrreducibleRepInfo {
    /// Complex character value at element `g`.
    pub fn chi(&self, g: usize) -> Complex64 {
        self.character[self.class_of[g]]
    }
    /// Character of the underlying real representation at `g`.
    pub fn real_chi(&self, g: usize) -> f64 {
        match self.kind {
            IrrepKind::Real => self.chi(g).re,
            IrrepKind::Complex => 2.0 * self.chi(g).re,
        }
    }
    pub fn is_trivial(&self) -> bool {
        self.dim == 1
            && self
                .character
                .iter()
                .all(|c| (c - Complex64::new(1.0, 0.0)).norm() < 1e-9)
    }
}

impl CharacterTable {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let (class_of, classes) = g.element_classes();
        let r = classes.len();
        let n = g.order();
        // structure constants: a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
        let mut a = vec![vec![vec![0.0f64; r]; r]; r];
        for k in 0..r {
            let z = classes[k][0];
            for i in 0..r {
                for &x in &classes[i] {
                    let y = g.mul(g.inv(x), z);
                    a[i][class_of[y]][k] += 1.0;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1a5);
        let mut found = None;
        for _attempt in 0..32 {
            let coeffs: Vec<f64> = (0..r).map(|_| rng.gen_range(0.1..1.0)).collect();
            let m = DMatrix::from_fn(r, r, |j, k| {
                (0..r).map(|i| coeffs[i] * a[i][j][k]).sum::<f64>()
            });
            let eig = m.clone().complex_eigenvalues();
            let scale = 1.0 + eig.iter().map(|e| e.norm()).fold(0.0, f64::max);
            let mut ok = true;
            for p in 0..r {
                for q in p + 1..r {
                    if (eig[p] - eig[q]).norm() < 1e-6 * scale {
                        ok = false;
                    }
                }
            }
            if ok {
                found = Some((m, eig));
                break;
            }
        }
        let (m, eig) = found
            .ok_or_else(|| Error::Numerical("class-algebra eigenvalues never separated".into()))?;
        let mc: DMatrix<Complex64> = m.map(|x| Complex64::new(x, 0.0));
        let mut chars = Vec::with_capacity(r);
        for lambda in eig.iter() {
            let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * *lambda;
            let svd = shifted.svd(false, true);
            let vt = svd
                .v_t
                .ok_or_else(|| Error::Numerical("svd failed".into()))?;
            let w: DVector<Complex64> = vt.row(r - 1).adjoint();
            let w0 = w[class_of[0]];
            if w0.norm() < 1e-12 {
                return Err(Error::Numerical(
                    "degenerate class-algebra eigenvector".into(),
                ));
            }
            let w = w / w0;
            let s: f64 = (0..r)
                .map(|i| w[i].norm_sqr() / classes[i].len() as f64)
                .sum();
            let d = (n as f64 / s).sqrt();
            let row: Vec<Complex64> = (0..r)
                .map(|i| clean(w[i] * d / classes[i].len() as f64))
                .collect();
            chars.push(row);
        }
        // deterministic order: dimension, then values class by class
        chars.sort_by(|x, y| {
            let kx = sort_key(x);
            let ky = sort_key(y);
            kx.cmp(&ky)
        });
        let indicators = chars
            .iter()
            .map(|c| {
                let s: Complex64 =
                    (0..n).map(|x| c[class_of[g.mul(x, x)]]).sum::<Complex64>() / n as f64;
                s.re.round() as i32
            })
            .collect();
        let t = CharacterTable {
            class_of,
            classes,
            chars,
            indicators,
        };
        t.check(n)?;
        Ok(t)
    }

    fn check(&self, n: usize) -> Result<()> {
        let r = self.classes.len();
        let mut dims = 0i64;
        for (p, cp) in self.chars.iter().enumerate() {
            let d = cp[self.class_of[0]].re;
            let di = crate::error::round_exact(d, 1e-6, "character degree")?;
            dims += di * di;
            for (q, cq) in self.chars.iter().enumerate() {
                let s: Complex64 = (0..r)
                    .map(|i| cp[i] * cq[i].conj() * self.classes[i].len() as f64)
                    .sum::<Complex64>()
                    / n as f64;
                let target = if p == q { 1.0 } else { 0.0 };
                if (s - Complex64::new(target, 0.0)).norm() > ORTHO_TOL {
                    return Err(Error::Numerical(format!(
                        "character orthogonality violated ({p},{q})"
                    )));
                }
            }
        }
        if dims != n as i64 {
            return Err(Error::Numerical(format!(
                "sum of squared degrees {dims} != {n}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
    pub fn degree(&self, i: usize) -> usize {
        self.chars[i][self.class_of[0]].re.round() as usize
    }

    /// Index of the complex conjugate character.
    pub fn conjugate_of(&self, i: usize) -> usize {
        let c: Vec<Complex64> = self.chars[i].iter().map(|z| z.conj()).collect();
        (0..self.len())
            .find(|&j| {
                self.chars[j]
                    .iter()
                    .zip(&c)
                    .all(|(a, b)| (a - b).norm() < 1e-7)
            })
            .unwrap_or(i)
    }
}

fn clean(z: Complex64) -> Complex64 {
    let snap = |x: f64| {
        if (x - x.round()).abs() < 1e-11 {
            x.round()
        } else {
            x
        }
    };
    Complex64::new(snap(z.re), snap(z.im))
}

fn sort_key(c: &[Complex64]) -> Vec<(i64, i64)> {
    let q = |x: f64| (x * 1e6).round() as i64;
    let mut k = vec![(q(c[0].re), 0)];
    k.extend(c.iter().map(|z| (-q(z.re), -q(z.im))));
    k
}

/// Real irreducible representations of `g`; complex-conjugate pairs merged.
///
/// Explicit matrices are attached when `|G| <= 256`.
pub fn real_irreducibles(
    g: &FiniteGroup,
    lattice: Option<&SubgroupClassLattice>,
) -> Result<Vec<IrreducibleRepInfo>> {
    let table = CharacterTable::new(g)?;
    let mut out: Vec<IrreducibleRepInfo> = Vec::new();
    let mut taken = vec![false; table.len()];
    for i in 0..table.len() {
        if taken[i] {
            continue;
        }
        let ind = table.indicators[i];
        if ind == -1 {
            return Err(Error::Quaternionic(i));
        }
        let j = table.conjugate_of(i);
        taken[i] = true;
        taken[j] = true;
        let dim = table.degree(i);
        let kind = if ind == 1 {
            IrrepKind::Real
        } else {
            IrrepKind::Complex
        };
        let real_dim = if kind == IrrepKind::Real {
            dim
        } else {
            2 * dim
        };
        let mut info = IrreducibleRepInfo {
            index: out.len(),
            name: String::new(),
            character: table.chars[i].clone(),
            dim,
            indicator: ind,
            kind,
            real_dim,
            kernel: None,
            real: None,
            complex: None,
            class_of: table.class_of.clone(),
        };
        if g.order() <= 256 {
            let cr = reps::complex_irrep(g, &info)?;
            info.real = Some(match kind {
                IrrepKind::Real => reps::real_irrep(g, &info)?,
                IrrepKind::Complex => cr.realify(),
            });
            info.complex = Some(cr);
        }
        out.push(info);
    }
    // names from dimension and kernel class
    let mut raw = Vec::new();
    for info in out.iter_mut() {
        let ker: Vec<usize> = (0..g.order())
            .filter(|&x| (info.chi(x) - Complex64::new(info.dim as f64, 0.0)).norm() < 1e-7)
            .collect();
        let kname = lattice
            .and_then(|l| l.class_of(&ker).ok())
            .map(|c| lattice.unwrap().class(c).name.clone());
        raw.push(match &kname {
            Some(k) => format!("V{}[{}]", info.real_dim, k),
            None => format!("V{}", info.real_dim),
        });
        info.kernel = kname;
    }
    for i in 0..out.len() {
        let dup = raw.iter().filter(|r| **r == raw[i]).count() > 1;
        let k = raw[..i].iter().filter(|r| **r == raw[i]).count() + 1;
        out[i].name = if dup {
            format!("{}#{}", raw[i], k)
        } else {
            raw[i].clone()
        };
    }
    Ok(out)
}
