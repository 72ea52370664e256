//! Maximal twisted orbit types in `V_{m,k,j}` for `O(2) x Gamma1 x S^1`.
//!
//! The O(2) factor acts on `W_k = C` by `e^{i phi} -> e^{i k phi}` and conjugation; the finite
//! factor through a real irreducible `U_j`; the circle by `z^m`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::amalgam::AmalgamatedClass;
use super::subgroup::{O2Subgroup, Quotient};
use crate::degree::{maximal_coefficient, DegreeEngine};
use crate::error::{Error, Result};
use crate::group::{IrreducibleRepInfo, IrrepKind, SubgroupClassLattice};

const TOL: f64 = 1e-8;

/// Quotient map on a dihedral O(2)-subgroup `D_M`; `(i, e)` is `R(i/M) kappa^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum O2Map {
    Trivial,
    /// `D_M -> Z2`, kernel `D_{M/2}` (contains `kappa`).
    Sign,
    /// `D_M -> D_p`, kernel `Z_{M/p}`.
    Dihedral(usize),
}

/// Explicit Goursat datum `{(g, x) in D_M x S : map(g) = fin_map(x)}`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub m: usize,
    pub map: O2Map,
    /// Sorted elements of the finite-side subgroup.
    pub fin: Vec<usize>,
    /// Quotient indices aligned with `fin`.
    pub fin_map: Vec<usize>,
    pub l: Quotient,
}

impl Realization {
    pub fn o2_value(&self, i: usize, e: usize) -> usize {
        match self.map {
            O2Map::Trivial => 0,
            O2Map::Sign => i % 2,
            O2Map::Dihedral(1) => e,
            O2Map::Dihedral(p) => i % p + p * e,
        }
    }

    fn sides(&self) -> (O2Subgroup, O2Subgroup) {
        let h = O2Subgroup::Dihedral(self.m);
        let h0 = match self.map {
            O2Map::Trivial => h,
            O2Map::Sign => O2Subgroup::Dihedral(self.m / 2),
            O2Map::Dihedral(p) => O2Subgroup::Cyclic(self.m / p),
        };
        (h, h0)
    }

    pub fn class(&self, lattice: &SubgroupClassLattice) -> Result<AmalgamatedClass> {
        let (h, h0) = self.sides();
        if Quotient::of(h, h0)? != self.l {
            return Err(Error::InvalidArgument(
                "realization quotient mismatch".into(),
            ));
        }
        let name = |s: &[usize]| -> Result<String> {
            Ok(lattice.class(lattice.class_of(s)?).name.clone())
        };
        let kernel: Vec<usize> = self
            .fin
            .iter()
            .zip(&self.fin_map)
            .filter(|(_, &v)| v == 0)
            .map(|(&x, _)| x)
            .collect();
        Ok(AmalgamatedClass {
            h,
            h0,
            l: self.l,
            k: name(&self.fin)?,
            k0: name(&kernel)?,
            tag: None,
            psi: None,
        })
    }

    /// Name with the O(2) side written in terms of the mode `k`.
    pub fn symbolic(&self, k: usize, lattice: &SubgroupClassLattice) -> Result<String> {
        let c = self.class(lattice)?;
        let sym = |s: O2Subgroup| match s {
            O2Subgroup::Dihedral(n) if n % k == 0 => format!("D{}k", multiple(n / k)),
            O2Subgroup::Cyclic(n) if n % k == 0 => format!("Z{}k", multiple(n / k)),
            other => other.to_string(),
        };
        Ok(if c.l == Quotient::Trivial {
            format!("{} x {}", sym(c.h), c.k)
        } else {
            format!(
                "{}^{{{}}} x_{{{}}}^{{{}}} {}",
                sym(c.h),
                sym(c.h0),
                c.l,
                c.k0,
                c.k
            )
        })
    }

    /// Elements of the subgroup inside `D_n x Gamma1` (product indexing), for `m | n`.
    pub fn instantiate(&self, n: usize, gamma_order: usize) -> Vec<usize> {
        assert!(n.is_multiple_of(self.m), "truncation must contain D_M");
        let mut out = Vec::new();
        for e in 0..2 {
            for j in (0..n).step_by(n / self.m) {
                let v = self.o2_value(j * self.m / n, e);
                for (&x, &w) in self.fin.iter().zip(&self.fin_map) {
                    if w == v {
                        out.push((j + n * e) * gamma_order + x);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn multiple(a: usize) -> String {
    if a == 1 {
        String::new()
    } else {
        a.to_string()
    }
}

/// A fixed vector `X` in `W_k (x) U = R^{2 x d}`, and the orbit type and normalizer it determines.
#[derive(Clone, Debug)]
pub struct Witness {
    pub vector: DMatrix<f64>,
    pub orbit_type: Realization,
    pub normalizer: Realization,
}

/// One maximal twisted orbit type `N(H)^H x_{Z2}^{Zm} Z2m` (or its mode-0 analogue).
#[derive(Clone, Debug, Serialize)]
pub struct O2TwistedType {
    pub name: String,
    /// Name with `k` and `m` kept symbolic.
    pub symbolic: String,
    pub orbit_type: String,
    pub normalizer: String,
    /// `|W(H)/S^1|` of the twisted class.
    pub weyl_order: usize,
    /// Real dimension of the fixed subspace.
    pub fixed_dim: usize,
    pub coefficient: i64,
    #[serde(skip)]
    pub witness: Option<Witness>,
}

/// Value and nonvanishing flag of `dim V^H / (2 |W(H)/S^1|)`.
pub fn coefficient_nonzero_check(fixed_dim: usize, weyl_order: usize) -> Result<(i64, bool)> {
    if !fixed_dim.is_multiple_of(2) {
        return Err(Error::NonIntegral {
            context: "fixed dimension of a complex representation".into(),
            value: fixed_dim as f64,
        });
    }
    let c = maximal_coefficient(fixed_dim / 2, weyl_order)?;
    Ok((c, c != 0))
}

fn lift_names(n: &str, h: &str, m: u32) -> String {
    format!("({n})^{{({h})}} x_{{Z2}}^{{Z{m}}} Z{}", 2 * m)
}

/// Wrap a finite twisted class name with the trivially acting O(2) factor.
pub fn with_o2_factor(finite: &str) -> String {
    let (body, tag) = match finite.rsplit_once('#') {
        Some((b, t)) => (b, format!("#{t}")),
        None => (finite, String::new()),
    };
    match body.split_once(" x_{") {
        Some((left, right)) => {
            let (k, k0) = left
                .strip_suffix('}')
                .and_then(|x| x.split_once("^{"))
                .unwrap_or((left, ""));
            format!("(O(2) x {k})^{{(O(2) x {k0})}} x_{{{right}{tag}")
        }
        None => format!("O(2) x {body}{tag}"),
    }
}

fn mode_zero(
    engine: &DegreeEngine,
    m: u32,
    rep: &IrreducibleRepInfo,
) -> Result<Vec<O2TwistedType>> {
    let tl = engine.twisted();
    let mut out = Vec::new();
    for t in tl.orbit_types(rep, m)?.into_iter().filter(|t| t.maximal) {
        let twist = tl.twist(t.class);
        let k = &tl.lattice().class(t.class.class).name;
        let name = with_o2_factor(&t.name);
        let symbolic = if twist.image == 1 {
            name.clone()
        } else {
            let n = twist.image;
            let base = format!(
                "(O(2) x {k})^{{(O(2) x {})}} x_{{Z{n}}}^{{Zm}} Z{n}m",
                twist.kernel_name
            );
            match twist.tag {
                Some(r) => format!("{base}#{r}"),
                None => base,
            }
        };
        out.push(O2TwistedType {
            name,
            symbolic,
            orbit_type: format!("O(2) x {}", twist.kernel_name),
            normalizer: format!("O(2) x {k}"),
            weyl_order: t.weyl_order,
            fixed_dim: 2 * t.fixed_dim,
            coefficient: maximal_coefficient(t.fixed_dim, t.weyl_order)?,
            witness: None,
        });
    }
    Ok(out)
}

fn normalizer_of(g: &crate::group::FiniteGroup, s: &[usize]) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| s.iter().all(|&a| s.binary_search(&g.conj(x, a)).is_ok()))
        .collect()
}

/// Axis type: `X = e1 u^T` with `u` spanning a line preserved (up to sign) by `S`.
fn axis_type(
    engine: &DegreeEngine,
    mats: &[DMatrix<f64>],
    u: &DMatrix<f64>,
    k: usize,
) -> Result<Witness> {
    let g = engine.lattice().group();
    let mut s = Vec::new();
    let mut chi = Vec::new();
    for (x, r) in mats.iter().enumerate() {
        let w = r * u;
        if (&w - u).norm() < TOL {
            s.push(x);
            chi.push(0);
        } else if (&w + u).norm() < TOL {
            s.push(x);
            chi.push(1);
        }
    }
    let kernel: Vec<usize> = s
        .iter()
        .zip(&chi)
        .filter(|(_, &c)| c == 0)
        .map(|(&x, _)| x)
        .collect();
    let ns = normalizer_of(g, &s);
    let nk = normalizer_of(g, &kernel);
    let nfin: Vec<usize> = ns
        .into_iter()
        .filter(|x| nk.binary_search(x).is_ok())
        .collect();
    let orbit_type = if kernel.len() == s.len() {
        Realization {
            m: k,
            map: O2Map::Trivial,
            fin: s,
            fin_map: chi,
            l: Quotient::Trivial,
        }
    } else {
        Realization {
            m: 2 * k,
            map: O2Map::Sign,
            fin: s,
            fin_map: chi,
            l: Quotient::Cyclic(2),
        }
    };
    let normalizer = Realization {
        m: 2 * k,
        map: O2Map::Trivial,
        fin_map: vec![0; nfin.len()],
        fin: nfin,
        l: Quotient::Trivial,
    };
    let mut vector = DMatrix::zeros(2, u.nrows());
    vector.row_mut(0).copy_from(&u.transpose());
    Ok(Witness {
        vector,
        orbit_type,
        normalizer,
    })
}

/// Conformal type for a two-dimensional `U` with dihedral image `D_n`, `n` even.
fn conformal_type(mats: &[DMatrix<f64>], axis: &DMatrix<f64>, k: usize) -> Result<Witness> {
    let rotations: Vec<&DMatrix<f64>> = mats.iter().filter(|r| r.determinant() > 0.0).collect();
    let mut angles: Vec<f64> = Vec::new();
    for r in &rotations {
        let a = r[(1, 0)].atan2(r[(0, 0)]);
        if !angles
            .iter()
            .any(|b| ((a - b).sin().abs() + (1.0 - (a - b).cos())) < TOL)
        {
            angles.push(a);
        }
    }
    let n = angles.len();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "dihedral image of odd or small order {n}"
        )));
    }
    // aligned orthonormal basis: e1 on a reflection axis
    let e1 = axis.clone() / axis.norm();
    let q = DMatrix::from_row_slice(2, 2, &[e1[0], -e1[1], e1[1], e1[0]]);
    let mut psi = Vec::with_capacity(mats.len());
    let mut psi_half = Vec::with_capacity(mats.len());
    for r in mats {
        let a = q.transpose() * r * &q;
        let e = usize::from(a.determinant() < 0.0);
        let t = a[(1, 0)].atan2(a[(0, 0)]) * n as f64 / std::f64::consts::TAU;
        let j = (t.round() as i64).rem_euclid(n as i64) as usize;
        if (t - t.round()).abs() > 1e-6 {
            return Err(Error::Numerical(
                "rotation angle off the dihedral grid".into(),
            ));
        }
        psi.push(j + n * e);
        let h = n / 2;
        psi_half.push(if h == 1 { e } else { j % h + h * e });
    }
    let all: Vec<usize> = (0..mats.len()).collect();
    let half = if n == 2 {
        Quotient::Cyclic(2)
    } else {
        Quotient::Dihedral(n / 2)
    };
    Ok(Witness {
        vector: q.transpose(),
        orbit_type: Realization {
            m: n * k,
            map: O2Map::Dihedral(n),
            fin: all.clone(),
            fin_map: psi,
            l: Quotient::Dihedral(n),
        },
        normalizer: Realization {
            m: n * k,
            map: O2Map::Dihedral(n / 2),
            fin: all,
            fin_map: psi_half,
            l: half,
        },
    })
}

/// Maximal twisted orbit types of `V_{m,k,label}`; `k = 0` means O(2) acts trivially.
pub fn maximal_twisted_types_o2(
    engine: &DegreeEngine,
    m: u32,
    k: usize,
    label: &str,
) -> Result<Vec<O2TwistedType>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "circle fold must be positive".into(),
        ));
    }
    let rep = &engine.irreps()[engine.irrep_index(label)?];
    if k == 0 {
        return mode_zero(engine, m, rep);
    }
    if rep.kind != IrrepKind::Real || rep.real_dim > 2 {
        return Err(Error::Unsupported(format!(
            "{}: only real irreducibles of dimension <= 2 with a dihedral mode",
            rep.name
        )));
    }
    let mats = &rep
        .real
        .as_ref()
        .ok_or_else(|| Error::Missing("explicit representation matrices".into()))?
        .mats;
    let witnesses = if rep.real_dim == 1 {
        vec![axis_type(
            engine,
            mats,
            &DMatrix::from_element(1, 1, 1.0),
            k,
        )?]
    } else {
        // one axis per orbit of reflection lines
        let mut axes: Vec<DMatrix<f64>> = Vec::new();
        for r in mats.iter().filter(|r| r.determinant() < 0.0) {
            let e = r.clone().symmetric_eigen();
            let i = if e.eigenvalues[0] > 0.0 { 0 } else { 1 };
            let u = DMatrix::from_column_slice(2, 1, e.eigenvectors.column(i).as_slice());
            let seen = axes
                .iter()
                .any(|a| mats.iter().any(|s| (s * a).dot(&u).abs() > 1.0 - TOL));
            if !seen {
                axes.push(u);
            }
        }
        if axes.is_empty() {
            return Err(Error::Unsupported(format!(
                "{}: image contains no reflections",
                rep.name
            )));
        }
        let mut w: Vec<Witness> = axes
            .iter()
            .map(|u| axis_type(engine, mats, u, k))
            .collect::<Result<_>>()?;
        w.push(conformal_type(mats, &axes[0], k)?);
        w
    };
    let lat = engine.lattice();
    let mut out = Vec::new();
    for w in witnesses {
        let h = w.orbit_type.class(lat)?.name();
        let n = w.normalizer.class(lat)?.name();
        let hs = w.orbit_type.symbolic(k, lat)?;
        let ns = w.normalizer.symbolic(k, lat)?;
        let (fixed_dim, weyl_order) = (2, 1);
        out.push(O2TwistedType {
            name: lift_names(&n, &h, m),
            symbolic: format!("({ns})^{{({hs})}} x_{{Z2}}^{{Zm}} Z2m"),
            orbit_type: h,
            normalizer: n,
            weyl_order,
            fixed_dim,
            coefficient: coefficient_nonzero_check(fixed_dim, weyl_order)?.0,
            witness: Some(w),
        });
    }
    Ok(out)
}
