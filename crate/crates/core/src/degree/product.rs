use std::collections::BTreeMap;

use serde::Serialize;

use super::DegreeEngine;
use crate::burnside::{burnside_pow, BurnsideElement, TwistedModuleElement};
use crate::error::{Error, Result};

/// Inputs of the product formula, keyed by irreducible index.
#[derive(Clone, Debug, Default)]
pub struct ProductData {
    /// `d_{k,l}` for `k > 0`.
    pub d: BTreeMap<(u32, usize), i64>,
    /// `rho_l`, the sign of the determinant on the `k = 0` block.
    pub rho: BTreeMap<usize, i32>,
    /// Multiplicity of `V_l` in the `k = 0` block.
    pub m0: BTreeMap<usize, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductResult {
    pub prefix: BurnsideElement,
    pub body: TwistedModuleElement,
    pub combined: TwistedModuleElement,
}

impl DegreeEngine {
    /// Product of the `delta_l` factors: `deg_{V_l}^{m_l}` where `rho_l = -1`, the unit otherwise.
    pub fn prefix(
        &self,
        rho: &BTreeMap<usize, i32>,
        m0: &BTreeMap<usize, u32>,
    ) -> Result<BurnsideElement> {
        let mut acc = self.unit();
        for (&l, &r) in rho {
            match r {
                1 => {}
                -1 => {
                    let m = *m0.get(&l).ok_or_else(|| {
                        Error::Missing(format!("k = 0 multiplicity of irreducible #{l}"))
                    })?;
                    let p = burnside_pow(self.lattice(), &self.gamma(l)?, m)?;
                    acc = self.mul(&acc, &p)?;
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "rho must be +1 or -1, got {r}"
                    )))
                }
            }
        }
        Ok(acc)
    }

    pub fn product_formula(&self, data: &ProductData) -> Result<ProductResult> {
        let mut body = TwistedModuleElement::zero();
        for (&(k, l), &c) in &data.d {
            if c == 0 {
                continue;
            }
            let b = self.basic(k, l)?;
            body = body.add(&b.degree.scale(c));
        }
        let prefix = self.prefix(&data.rho, &data.m0)?;
        let combined = self.act(&prefix, &body)?;
        Ok(ProductResult {
            prefix,
            body,
            combined,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_prefix_and_zero() {
        let e = DegreeEngine::from_name("d4").unwrap();
        let mut data = ProductData::default();
        data.d.insert((1, 4), 1);
        data.rho.insert(0, 1);
        let r = e.product_formula(&data).unwrap();
        assert_eq!(r.combined, e.basic(1, 4).unwrap().degree);
        let z = e.product_formula(&ProductData::default()).unwrap();
        assert!(z.combined.is_zero());
    }

    #[test]
    fn missing_multiplicity() {
        let e = DegreeEngine::from_name("z2").unwrap();
        let mut data = ProductData::default();
        data.rho.insert(1, -1);
        assert!(e.product_formula(&data).is_err());
    }
}
