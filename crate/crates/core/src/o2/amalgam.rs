use std::fmt;

use serde::{Deserialize, Serialize};

use super::subgroup::{O2Subgroup, Quotient};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupClassLattice};

/// Goursat datum `H^{H0} x_L^{K0} K = {(h, k) : phi(h) = psi(k)}` in `O(2) x Gamma1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmalgamatedClass {
    pub h: O2Subgroup,
    pub h0: O2Subgroup,
    pub l: Quotient,
    /// Class name of `K` in the finite factor.
    pub k: String,
    pub k0: String,
    pub tag: Option<usize>,
    /// `psi: K -> L` on the sorted class representative, as indices into [`quotient_group`].
    #[serde(skip)]
    pub psi: Option<Vec<usize>>,
}

impl PartialEq for AmalgamatedClass {
    fn eq(&self, o: &Self) -> bool {
        (self.h, self.h0, self.l, &self.k, &self.k0, self.tag)
            == (o.h, o.h0, o.l, &o.k, &o.k0, o.tag)
    }
}
impl Eq for AmalgamatedClass {}

/// The finite group realizing a quotient descriptor (`Z_n` cyclic, `D_n` dihedral).
pub fn quotient_group(l: Quotient) -> FiniteGroup {
    match l {
        Quotient::Trivial => FiniteGroup::cyclic(1),
        Quotient::Cyclic(n) => FiniteGroup::cyclic(n),
        Quotient::Dihedral(n) => FiniteGroup::dihedral(n),
    }
    .expect("positive order")
}

impl AmalgamatedClass {
    /// Plain product `H x K`.
    pub fn product(h: O2Subgroup, k: &str) -> Self {
        AmalgamatedClass {
            h,
            h0: h,
            l: Quotient::Trivial,
            k: k.into(),
            k0: k.into(),
            tag: None,
            psi: None,
        }
    }

    pub fn name(&self) -> String {
        let base = if self.l == Quotient::Trivial {
            format!("{} x {}", self.h, self.k)
        } else {
            format!(
                "{}^{{{}}} x_{{{}}}^{{{}}} {}",
                self.h, self.h0, self.l, self.k0, self.k
            )
        };
        match self.tag {
            Some(r) => format!("{base}#{r}"),
            None => base,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unparseable amalgamated class {s:?}"));
        let (body, tag) = match s.rsplit_once('#') {
            Some((b, t)) => (b, Some(t.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let mut c = if let Some((left, right)) = body.split_once(" x_{") {
            let (h, h0) = left
                .strip_suffix('}')
                .and_then(|x| x.split_once("^{"))
                .ok_or_else(bad)?;
            let (l, rest) = right.split_once("}^{").ok_or_else(bad)?;
            let (k0, k) = rest.split_once("} ").ok_or_else(bad)?;
            let (h, h0): (O2Subgroup, O2Subgroup) = (h.parse()?, h0.parse()?);
            let l: Quotient = l.parse()?;
            if Quotient::of(h, h0)? != l || l == Quotient::Trivial {
                return Err(bad());
            }
            AmalgamatedClass {
                h,
                h0,
                l,
                k: k.into(),
                k0: k0.into(),
                tag: None,
                psi: None,
            }
        } else {
            let (h, k) = body.split_once(" x ").ok_or_else(bad)?;
            Self::product(h.parse()?, k)
        };
        if c.k.is_empty() || c.k0.is_empty() || c.k.contains(' ') || c.k0.contains(' ') {
            return Err(bad());
        }
        c.tag = tag;
        Ok(c)
    }

    /// Pullback along the `m`-fold cover of the rotation part.
    pub fn fold(&self, m: usize) -> Self {
        AmalgamatedClass {
            h: self.h.fold(m),
            h0: self.h0.fold(m),
            ..self.clone()
        }
    }

    /// Goursat consistency on the finite side: `psi` is a surjective homomorphism `K -> L`
    /// with kernel in the class `K0`, and `H/H0 = L`.
    pub fn goursat_check(&self, lattice: &SubgroupClassLattice) -> Result<()> {
        let g = lattice.group();
        let fail = |why: &str| Error::InvalidArgument(format!("{}: {why}", self.name()));
        if Quotient::of(self.h, self.h0)? != self.l {
            return Err(fail("O(2)-side quotient mismatch"));
        }
        let k = &lattice.class(lattice.find(&self.k)?).rep;
        let lg = quotient_group(self.l);
        let psi = match &self.psi {
            Some(p) => p.clone(),
            None if self.l == Quotient::Trivial => vec![0; k.len()],
            None => return Err(fail("missing quotient map")),
        };
        if psi.len() != k.len() {
            return Err(fail("quotient map length"));
        }
        let at = |x: usize| psi[k.binary_search(&x).expect("closed")];
        for &a in k {
            for &b in k {
                if at(g.mul(a, b)) != lg.mul(at(a), at(b)) {
                    return Err(fail("not a homomorphism"));
                }
            }
        }
        let mut image: Vec<usize> = psi.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != lg.order() {
            return Err(fail("not surjective"));
        }
        let kernel: Vec<usize> = k
            .iter()
            .zip(&psi)
            .filter(|(_, &v)| v == 0)
            .map(|(&a, _)| a)
            .collect();
        if lattice.class(lattice.class_of(&kernel)?).name != self.k0 {
            return Err(fail("kernel class mismatch"));
        }
        Ok(())
    }
}

impl fmt::Display for AmalgamatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
