use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{fixed_dim, IrreducibleRepInfo, SubgroupClassLattice};

/// Burnside degree of `-Id` on the unit ball of `V_l`:
/// `n_L = ((-1)^{dim V^L} - sum_{K > L} n_K n(L,K) |W(K)|) / |W(L)|`.
pub fn gamma_basic_degree(
    lat: &SubgroupClassLattice,
    rep: &IrreducibleRepInfo,
) -> Result<BurnsideElement> {
    let n = lat.len();
    let mut coeff = vec![0i64; n];
    // classes are sorted by order, so descending index is a valid top-down order
    for l in (0..n).rev() {
        let d = fixed_dim(rep, &lat.class(l).rep)?;
        let mut s: i64 = if d % 2 == 0 { 1 } else { -1 };
        for k in l + 1..n {
            if coeff[k] != 0 && lat.leq(l, k) {
                s -= coeff[k] * lat.n_containments(l, k) as i64 * lat.class(k).weyl_order as i64;
            }
        }
        let w = lat.class(l).weyl_order as i64;
        if s % w != 0 {
            return Err(Error::NonIntegral {
                context: format!("Burnside degree at {}", lat.class(l).name),
                value: s as f64 / w as f64,
            });
        }
        coeff[l] = s / w;
    }
    let mut out = BurnsideElement::zero();
    for (c, v) in lat.classes().iter().zip(coeff) {
        out.add_term(c.name.clone(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{burnside_mul, unit};
    use crate::group::{real_irreducibles, FiniteGroup};

    #[test]
    fn trivial_line_is_minus_unit() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let lat = SubgroupClassLattice::new(&g).unwrap();
        let irr = real_irreducibles(&g, Some(&lat)).unwrap();
        let t = irr.iter().find(|r| r.is_trivial()).unwrap();
        let d = gamma_basic_degree(&lat, t).unwrap();
        assert_eq!(
            d,
            BurnsideElement::term(lat.class(lat.top()).name.clone(), -1)
        );
    }

    #[test]
    fn squares_to_unit() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let lat = SubgroupClassLattice::new(&g).unwrap();
        for r in real_irreducibles(&g, Some(&lat)).unwrap() {
            let d = gamma_basic_degree(&lat, &r).unwrap();
            assert_eq!(
                burnside_mul(&lat, &d, &d).unwrap(),
                unit(&lat),
                "{}",
                r.name
            );
        }
    }
}
