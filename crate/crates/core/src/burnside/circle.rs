use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, FiniteGroup};

/// Root of unity `exp(2 pi i p/q)` with `0 <= p < q`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CircleElement {
    pub p: u32,
    pub q: u32,
}

impl CircleElement {
    pub const ONE: CircleElement = CircleElement { p: 0, q: 1 };

    pub fn new(p: i64, q: u32) -> Self {
        assert!(q > 0);
        let p = p.rem_euclid(q as i64) as u32;
        if p == 0 {
            return Self::ONE;
        }
        let g = gcd(p as usize, q as usize) as u32;
        CircleElement { p: p / g, q: q / g }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Self) -> Self {
        let q = self.q as u64 * o.q as u64 / gcd(self.q as usize, o.q as usize) as u64;
        let q = q as u32;
        Self::new((self.p * (q / self.q) + o.p * (q / o.q)) as i64, q)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::new(self.p as i64 * k, self.q)
    }

    /// Numerator over a common denominator `e` (must be a multiple of `q`).
    pub fn over(self, e: u32) -> u32 {
        assert_eq!(e % self.q, 0);
        self.p * (e / self.q)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * self.p as f64 / self.q as f64,
        )
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Homomorphism from a subgroup `K` (sorted element list) to the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleHomomorphism {
    pub domain: Vec<usize>,
    pub values: Vec<CircleElement>,
}

impl CircleHomomorphism {
    pub fn new(g: &FiniteGroup, domain: Vec<usize>, values: Vec<CircleElement>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::NotHomomorphism(
                "value count differs from domain size".into(),
            ));
        }
        let h = CircleHomomorphism { domain, values };
        h.check(g)?;
        Ok(h)
    }

    pub fn trivial(domain: Vec<usize>) -> Self {
        let values = vec![CircleElement::ONE; domain.len()];
        CircleHomomorphism { domain, values }
    }

    pub fn value(&self, x: usize) -> Option<CircleElement> {
        self.domain.binary_search(&x).ok().map(|i| self.values[i])
    }

    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        for (i, &a) in self.domain.iter().enumerate() {
            for (j, &b) in self.domain.iter().enumerate() {
                let ab = g.mul(a, b);
                let v = self
                    .value(ab)
                    .ok_or_else(|| Error::NotHomomorphism("domain is not closed".into()))?;
                if v != self.values[i].mul(self.values[j]) {
                    return Err(Error::NotHomomorphism(format!(
                        "theta({}) theta({}) != theta({})",
                        g.element_name(a),
                        g.element_name(b),
                        g.element_name(ab)
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_products() {
        assert_eq!(CircleElement::new(2, 4), CircleElement { p: 1, q: 2 });
        assert_eq!(CircleElement::new(-1, 4), CircleElement { p: 3, q: 4 });
        assert_eq!(
            CircleElement::new(1, 2).mul(CircleElement::new(1, 2)),
            CircleElement::ONE
        );
        assert_eq!(
            CircleElement::new(1, 3).mul(CircleElement::new(1, 6)),
            CircleElement::new(1, 2)
        );
        assert_eq!(CircleElement::new(1, 4).pow(2), CircleElement::new(1, 2));
    }

    #[test]
    fn homomorphism_check() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let dom = vec![0, 1, 2, 3];
        let vals: Vec<CircleElement> = (0..4).map(|i| CircleElement::new(i, 4)).collect();
        assert!(CircleHomomorphism::new(&g, dom.clone(), vals).is_ok());
        let bad: Vec<CircleElement> = (0..4).map(|i| CircleElement::new(i, 3)).collect();
        assert!(CircleHomomorphism::new(&g, dom, bad).is_err());
    }
}
