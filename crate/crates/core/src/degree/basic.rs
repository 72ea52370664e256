use serde::Serialize;

use crate::burnside::{OrbitType, TwistedClass, TwistedLattice, TwistedModuleElement};
use crate::error::{Error, Result};
use crate::group::IrreducibleRepInfo;

/// Basic degree of the irreducible `V_{k,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicDegree {
    pub rep: String,
    pub fold: u32,
    pub degree: TwistedModuleElement,
}

/// Longest chain length above each type, used to order the recurrence.
fn ranks(tl: &TwistedLattice, types: &[OrbitType]) -> Vec<usize> {
    let n = types.len();
    let mut rank = vec![0usize; n];
    // types above `i` always have strictly larger fixed-class order or the same class with larger twist data;
    // iterate to a fixed point, n is small
    let above: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && tl.leq(types[i].class, types[j].class))
                .collect()
        })
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            let r = above[i].iter().map(|&j| rank[j] + 1).max().unwrap_or(0);
            if r != rank[i] {
                rank[i] = r;
                changed = true;
            }
        }
    }
    rank
}

/// Recurrence over explicit orbit-type data, evaluated top-down.
/// Returns coefficients aligned with `types`.
pub fn recurrence(tl: &TwistedLattice, types: &[OrbitType]) -> Result<Vec<i64>> {
    let rank = ranks(tl, types);
    let mut order: Vec<usize> = (0..types.len()).collect();
    order.sort_by(|&a, &b| {
        rank[a]
            .cmp(&rank[b])
            .then_with(|| types[a].name.cmp(&types[b].name))
    });
    let mut coeff = vec![0i64; types.len()];
    for &i in &order {
        let h = &types[i];
        if h.weyl_order == 0 {
            return Err(Error::Missing(format!("Weyl order of {}", h.name)));
        }
        let mut s = h.fixed_dim as i64;
        for (j, k) in types.iter().enumerate() {
            if j != i && tl.leq(h.class, k.class) {
                s -= coeff[j] * tl.n_containments(h.class, k.class) as i64 * k.weyl_order as i64;
            }
        }
        if s % h.weyl_order as i64 != 0 {
            return Err(Error::NonIntegral {
                context: format!("basic degree coefficient at {}", h.name),
                value: s as f64 / h.weyl_order as f64,
            });
        }
        coeff[i] = s / h.weyl_order as i64;
    }
    Ok(coeff)
}

pub fn basic_degree(tl: &TwistedLattice, rep: &IrreducibleRepInfo, k: u32) -> Result<BasicDegree> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "basic degrees need a positive fold".into(),
        ));
    }
    let types = tl.orbit_types(rep, k)?;
    let coeff = recurrence(tl, &types)?;
    let mut degree = TwistedModuleElement::zero();
    for (t, c) in types.iter().zip(coeff) {
        degree.add_term(t.name.clone(), c);
    }
    Ok(BasicDegree {
        rep: rep.name.clone(),
        fold: k,
        degree,
    })
}

/// Closed form for a maximal type: `(1/2 dim V^H) / |W(H)/S^1|`.
pub fn maximal_coefficient(fixed_dim: usize, weyl_order: usize) -> Result<i64> {
    if weyl_order == 0 {
        return Err(Error::Missing("zero Weyl order".into()));
    }
    if !fixed_dim.is_multiple_of(weyl_order) {
        return Err(Error::NonIntegral {
            context: "maximal coefficient".into(),
            value: fixed_dim as f64 / weyl_order as f64,
        });
    }
    Ok((fixed_dim / weyl_order) as i64)
}

/// Coefficients indexed by twisted class, for callers that want structured access.
pub fn coefficients(tl: &TwistedLattice, d: &BasicDegree) -> Result<Vec<(TwistedClass, i64)>> {
    d.degree
        .iter()
        .map(|(n, c)| Ok((tl.parse(n)?, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{real_irreducibles, FiniteGroup};

    #[test]
    fn unique_maximal_type() {
        let tl = TwistedLattice::from_group(&FiniteGroup::cyclic(2).unwrap()).unwrap();
        let irr = real_irreducibles(tl.group(), Some(tl.lattice())).unwrap();
        for r in &irr {
            let d = basic_degree(&tl, r, 1).unwrap();
            assert_eq!(d.degree.len(), 1);
            assert_eq!(d.degree.iter().next().unwrap().1, 1);
        }
        assert_eq!(maximal_coefficient(2, 1).unwrap(), 2);
        assert!(maximal_coefficient(1, 2).is_err());
    }

    #[test]
    fn d4_two_dim() {
        let tl = TwistedLattice::from_group(&FiniteGroup::dihedral(4).unwrap()).unwrap();
        let irr = real_irreducibles(tl.group(), Some(tl.lattice())).unwrap();
        let v2 = irr.iter().find(|r| r.real_dim == 2).unwrap();
        let d = basic_degree(&tl, v2, 1).unwrap();
        let pos: i64 = d
            .degree
            .iter()
            .filter(|(_, c)| *c > 0)
            .map(|(_, c)| c)
            .sum();
        assert_eq!(pos, 3);
        assert_eq!(d.degree.len(), 4);
    }
}
