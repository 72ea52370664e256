use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::burnside::{BurnsideElement, TwistedModuleElement};
use crate::degree::DegreeEngine;
use crate::error::{Error, Result};
use crate::o2::{maximal_twisted_types_o2, O2TwistedType};

/// Source of basic degrees and Burnside arithmetic for the bifurcation pipeline.
///
/// Block labels are provider-specific: irreducible names for a finite group, `"j:label"` (dihedral
/// mode `j`, finite irreducible `label`) for `O(2) x Gamma1`.
pub trait DegreeProvider {
    /// `deg_{V_{k,label}}`; symbolic providers return the part supported on maximal types.
    fn basic(&self, k: u32, label: &str) -> Result<TwistedModuleElement>;
    /// Maximal twisted orbit types of `V_{k,label}`.
    fn maximal_types(&self, k: u32, label: &str) -> Result<Vec<String>>;
    /// The class `phi_k(K)`: the exact symmetry of a solution with symmetry at least `K`.
    fn unfold(&self, k: u32, label: &str, class: &str) -> Result<String>;
    /// Product of gamma-degrees of the `k = 0` blocks with negative determinant.
    fn prefix(
        &self,
        rho: &BTreeMap<String, i32>,
        m0: &BTreeMap<String, u32>,
    ) -> Result<BurnsideElement>;
    fn act(&self, a: &BurnsideElement, x: &TwistedModuleElement) -> Result<TwistedModuleElement>;
    fn unit(&self) -> BurnsideElement;
    /// Whether `basic` returns full degrees.
    fn complete(&self) -> bool;
}

impl DegreeProvider for DegreeEngine {
    fn basic(&self, k: u32, label: &str) -> Result<TwistedModuleElement> {
        Ok(DegreeEngine::basic(self, k, self.irrep_index(label)?)?.degree)
    }

    fn maximal_types(&self, k: u32, label: &str) -> Result<Vec<String>> {
        let rep = &self.irreps()[self.irrep_index(label)?];
        Ok(self
            .twisted()
            .orbit_types(rep, k)?
            .into_iter()
            .filter(|t| t.maximal)
            .map(|t| t.name)
            .collect())
    }

    fn unfold(&self, k: u32, _label: &str, class: &str) -> Result<String> {
        let mut t = self.twisted().parse(class)?;
        if k == 0 || t.l % k != 0 {
            return Err(Error::InvalidArgument(format!(
                "{class} is not a {k}-fold class"
            )));
        }
        t.l /= k;
        Ok(self.twisted().name(t))
    }

    fn prefix(
        &self,
        rho: &BTreeMap<String, i32>,
        m0: &BTreeMap<String, u32>,
    ) -> Result<BurnsideElement> {
        let by_index = |m: &BTreeMap<String, i32>| -> Result<BTreeMap<usize, i32>> {
            m.iter()
                .map(|(l, &v)| Ok((self.irrep_index(l)?, v)))
                .collect()
        };
        let mult: BTreeMap<usize, u32> = m0
            .iter()
            .map(|(l, &v)| Ok((self.irrep_index(l)?, v)))
            .collect::<Result<_>>()?;
        DegreeEngine::prefix(self, &by_index(rho)?, &mult)
    }

    fn act(&self, a: &BurnsideElement, x: &TwistedModuleElement) -> Result<TwistedModuleElement> {
        DegreeEngine::act(self, a, x)
    }

    fn unit(&self) -> BurnsideElement {
        DegreeEngine::unit(self)
    }

    fn complete(&self) -> bool {
        true
    }
}

/// `O(2) x Gamma1` through the symbolic layer: maximal parts of basic degrees only.
pub struct O2Provider {
    pub engine: DegreeEngine,
    cache: Mutex<HashMap<(u32, String), Vec<O2TwistedType>>>,
}

impl O2Provider {
    pub fn new(engine: DegreeEngine) -> Self {
        O2Provider {
            engine,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_name(gamma1: &str) -> Result<Self> {
        Ok(Self::new(DegreeEngine::from_name(gamma1)?))
    }

    /// Split `"j:label"`.
    pub fn parse_label(label: &str) -> Result<(usize, &str)> {
        let (j, l) = label.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("block label {label:?} is not of the form j:irrep"))
        })?;
        let j = j
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad dihedral mode in {label:?}")))?;
        Ok((j, l))
    }

    pub fn types(&self, k: u32, label: &str) -> Result<Vec<O2TwistedType>> {
        let key = (k, label.to_string());
        if let Some(t) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let (j, l) = Self::parse_label(label)?;
        let t = maximal_twisted_types_o2(&self.engine, k, j, l)?;
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, t.clone());
        Ok(t)
    }

    fn unit_name(&self) -> String {
        let lat = self.engine.lattice();
        format!("O(2) x {}", lat.class(lat.top()).name)
    }
}

impl DegreeProvider for O2Provider {
    fn basic(&self, k: u32, label: &str) -> Result<TwistedModuleElement> {
        let mut out = TwistedModuleElement::zero();
        for t in self.types(k, label)? {
            out.add_term(&t.name, t.coefficient);
        }
        Ok(out)
    }

    fn maximal_types(&self, k: u32, label: &str) -> Result<Vec<String>> {
        Ok(self.types(k, label)?.into_iter().map(|t| t.name).collect())
    }

    fn unfold(&self, k: u32, label: &str, class: &str) -> Result<String> {
        let at_k = self.maximal_types(k, label)?;
        let i = at_k
            .iter()
            .position(|c| c == class)
            .ok_or_else(|| Error::UnknownClass(class.into()))?;
        Ok(self.maximal_types(1, label)?.swap_remove(i))
    }

    fn prefix(
        &self,
        rho: &BTreeMap<String, i32>,
        _m0: &BTreeMap<String, u32>,
    ) -> Result<BurnsideElement> {
        if rho.values().all(|&r| r == 1) {
            Ok(self.unit())
        } else {
            Err(Error::Unsupported(
                "Burnside ring of O(2) x Gamma1 beyond the unit".into(),
            ))
        }
    }

    fn act(&self, a: &BurnsideElement, x: &TwistedModuleElement) -> Result<TwistedModuleElement> {
        if *a == self.unit() {
            Ok(x.clone())
        } else {
            Err(Error::Unsupported(
                "module action of O(2) x Gamma1 beyond the unit".into(),
            ))
        }
    }

    fn unit(&self) -> BurnsideElement {
        BurnsideElement::generator(self.unit_name())
    }

    fn complete(&self) -> bool {
        false
    }
}
