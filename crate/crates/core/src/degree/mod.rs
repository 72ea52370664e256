//! Basic degrees, Burnside degrees of antipodal maps, winding numbers and the product formula.

mod basic;
mod gamma;
mod product;
mod winding;

pub use basic::{basic_degree, coefficients, maximal_coefficient, recurrence, BasicDegree};
pub use gamma::gamma_basic_degree;
pub use product::{ProductData, ProductResult};
pub use winding::{circle, rectangle, sample_loop, winding_of, ClosedPath, DEFAULT_BUDGET};

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::burnside::{self, BurnsideElement, TwistedClass, TwistedLattice, TwistedModuleElement};
use crate::error::{Error, Result};
use crate::group::{real_irreducibles, FiniteGroup, IrreducibleRepInfo, SubgroupClassLattice};

type ActionKey = (usize, TwistedClass);

/// Group data plus memoized degree computations for one finite `Gamma`.
#[derive(Debug)]
pub struct DegreeEngine {
    tl: TwistedLattice,
    irreps: Vec<IrreducibleRepInfo>,
    basic: Mutex<BTreeMap<(u32, usize), BasicDegree>>,
    gamma: Mutex<BTreeMap<usize, BurnsideElement>>,
    action: Mutex<HashMap<ActionKey, Vec<(TwistedClass, i64)>>>,
}

impl DegreeEngine {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let tl = TwistedLattice::from_group(g)?;
        let irreps = real_irreducibles(g, Some(tl.lattice()))?;
        Ok(DegreeEngine {
            tl,
            irreps,
            basic: Mutex::new(BTreeMap::new()),
            gamma: Mutex::new(BTreeMap::new()),
            action: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::new(&FiniteGroup::from_name(name)?)
    }

    pub fn twisted(&self) -> &TwistedLattice {
        &self.tl
    }
    pub fn lattice(&self) -> &SubgroupClassLattice {
        self.tl.lattice()
    }
    pub fn irreps(&self) -> &[IrreducibleRepInfo] {
        &self.irreps
    }

    pub fn irrep_index(&self, label: &str) -> Result<usize> {
        self.irreps
            .iter()
            .position(|r| r.name == label)
            .or_else(|| {
                label
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < self.irreps.len())
            })
            .ok_or_else(|| Error::UnknownClass(format!("irreducible `{label}`")))
    }

    pub fn basic(&self, k: u32, j: usize) -> Result<BasicDegree> {
        if let Some(d) = self.basic.lock().unwrap().get(&(k, j)) {
            return Ok(d.clone());
        }
        let rep = self
            .irreps
            .get(j)
            .ok_or_else(|| Error::UnknownClass(format!("irreducible #{j}")))?;
        let d = basic_degree(&self.tl, rep, k)?;
        self.basic.lock().unwrap().insert((k, j), d.clone());
        Ok(d)
    }

    pub fn gamma(&self, j: usize) -> Result<BurnsideElement> {
        if let Some(d) = self.gamma.lock().unwrap().get(&j) {
            return Ok(d.clone());
        }
        let rep = self
            .irreps
            .get(j)
            .ok_or_else(|| Error::UnknownClass(format!("irreducible #{j}")))?;
        let d = gamma_basic_degree(self.lattice(), rep)?;
        self.gamma.lock().unwrap().insert(j, d.clone());
        Ok(d)
    }

    pub fn mul(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
        burnside::burnside_mul(self.lattice(), x, y)
    }

    pub fn unit(&self) -> BurnsideElement {
        burnside::unit(self.lattice())
    }

    /// Module action with memoized generator products.
    pub fn act(
        &self,
        a: &BurnsideElement,
        x: &TwistedModuleElement,
    ) -> Result<TwistedModuleElement> {
        let mut out = TwistedModuleElement::zero();
        for (kn, ck) in a.iter() {
            let k = self.lattice().find(kn)?;
            for (hn, ch) in x.iter() {
                let h = self.tl.parse(hn)?;
                let cached = self.action.lock().unwrap().get(&(k, h)).cloned();
                let prod = match cached {
                    Some(p) => p,
                    None => {
                        let p = burnside::action_generator(&self.tl, k, h)?;
                        self.action.lock().unwrap().insert((k, h), p.clone());
                        p
                    }
                };
                for (t, n) in prod {
                    out.add_term(self.tl.name(t), ck * ch * n);
                }
            }
        }
        Ok(out)
    }

    pub fn fold(&self, x: &TwistedModuleElement, k: u32) -> Result<TwistedModuleElement> {
        burnside::fold(&self.tl, x, k)
    }
}
