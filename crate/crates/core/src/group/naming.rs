//! Human-readable class names: `Z4`, `D2`, `Dt2`, `D4p`, `D4d`, `Z2m`, ...

use std::collections::HashMap;

use super::lattice::ClassInfo;
use super::{Factor, FiniteGroup};

pub(super) fn class_names(g: &FiniteGroup, classes: &[ClassInfo]) -> Vec<String> {
    let raw: Vec<String> = match g.factors() {
        [Factor::Cyclic(_)] => classes.iter().map(|c| format!("Z{}", c.order())).collect(),
        [Factor::Dihedral(n)] => classes.iter().map(|c| dihedral_name(*n, &c.rep)).collect(),
        [Factor::Dihedral(n), Factor::Cyclic(2)] => classes
            .iter()
            .map(|c| with_z2(g, Base::Dihedral(*n), &c.rep))
            .collect(),
        [Factor::Cyclic(_), Factor::Cyclic(2)] => classes
            .iter()
            .map(|c| with_z2(g, Base::Cyclic, &c.rep))
            .collect(),
        _ => generic(classes),
    };
    dedup(raw)
}

fn generic(classes: &[ClassInfo]) -> Vec<String> {
    let mut count: HashMap<usize, usize> = HashMap::new();
    classes
        .iter()
        .map(|c| {
            let k = count.entry(c.order()).or_insert(0);
            *k += 1;
            format!("H{}_{}", c.order(), k)
        })
        .collect()
}

fn dedup(raw: Vec<String>) -> Vec<String> {
    let mut total: HashMap<&str, usize> = HashMap::new();
    for r in &raw {
        *total.entry(r.as_str()).or_insert(0) += 1;
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    raw.iter()
        .map(|r| {
            if total[r.as_str()] == 1 {
                r.clone()
            } else {
                let k = seen.entry(r.clone()).or_insert(0);
                *k += 1;
                format!("{r}#{k}")
            }
        })
        .collect()
}

/// Name of a subgroup of `D_n` given by element indices (`i` = r^i, `n+i` = r^i s).
pub(crate) fn dihedral_name(n: usize, elems: &[usize]) -> String {
    let rot = elems.iter().filter(|&&x| x < n).count();
    let refl: Vec<usize> = elems.iter().filter(|&&x| x >= n).map(|&x| x - n).collect();
    if refl.is_empty() {
        return format!("Z{rot}");
    }
    let step = n / rot;
    if step.is_multiple_of(2) && refl[0] % 2 == 1 {
        format!("Dt{rot}")
    } else {
        format!("D{rot}")
    }
}

#[derive(Clone, Copy)]
enum Base {
    Dihedral(usize),
    Cyclic,
}

impl Base {
    fn name(&self, elems: &[usize]) -> String {
        match *self {
            Base::Dihedral(n) => dihedral_name(n, elems),
            Base::Cyclic => format!("Z{}", elems.len()),
        }
    }
    fn is_reflection(&self, x: usize) -> bool {
        matches!(*self, Base::Dihedral(n) if x >= n)
    }
}

fn with_z2(g: &FiniteGroup, base: Base, h: &[usize]) -> String {
    let proj: Vec<usize> = {
        let mut p: Vec<usize> = h.iter().map(|&x| x / 2).collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let kernel: Vec<usize> = h.iter().filter(|&&x| x % 2 == 0).map(|&x| x / 2).collect();
    let pname = base.name(&proj);
    if h.contains(&1) {
        return format!("{pname}p");
    }
    if kernel.len() == proj.len() {
        return pname;
    }
    // graph of a character P -> Z2 with kernel `kernel`
    let suffix = match base {
        Base::Cyclic => "d",
        Base::Dihedral(_) => {
            let has_refl = |s: &[usize]| s.iter().any(|&x| base.is_reflection(x));
            if !has_refl(&proj) {
                if proj.len() == 2 {
                    "m"
                } else {
                    "d"
                }
            } else if !has_refl(&kernel) {
                "z"
            } else {
                let first = *proj.iter().find(|&&x| base.is_reflection(x)).unwrap();
                // conjugations of the first factor that preserve the projection
                let a_order = g.order() / 2;
                let conj = |x: usize, s: &[usize]| -> Vec<usize> {
                    let mut c: Vec<usize> = s.iter().map(|&a| g.conj(2 * x, 2 * a) / 2).collect();
                    c.sort_unstable();
                    c
                };
                let hit = (0..a_order)
                    .any(|x| conj(x, &proj) == proj && conj(x, &kernel).contains(&first));
                if hit {
                    "d"
                } else {
                    "hd"
                }
            }
        }
    };
    let suffix = if matches!(base, Base::Cyclic) && proj.len() == 2 {
        "m"
    } else {
        suffix
    };
    format!("{pname}{suffix}")
}
