use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed subgroups of O(2) up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum O2Subgroup {
    SO2,
    O2,
    Cyclic(usize),
    Dihedral(usize),
}

impl O2Subgroup {
    /// Preimage under the `m`-fold cover `z -> z^m` on the rotation part.
    pub fn fold(self, m: usize) -> Self {
        match self {
            O2Subgroup::Cyclic(n) => O2Subgroup::Cyclic(n * m),
            O2Subgroup::Dihedral(n) => O2Subgroup::Dihedral(n * m),
            other => other,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, O2Subgroup::Cyclic(_) | O2Subgroup::Dihedral(_))
    }
}

impl fmt::Display for O2Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            O2Subgroup::SO2 => write!(f, "SO(2)"),
            O2Subgroup::O2 => write!(f, "O(2)"),
            O2Subgroup::Cyclic(n) => write!(f, "Z{n}"),
            O2Subgroup::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

fn index(s: &str, what: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Parse(format!("bad {what} index in {s:?}"))),
    }
}

impl FromStr for O2Subgroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SO(2)" => Ok(O2Subgroup::SO2),
            "O(2)" => Ok(O2Subgroup::O2),
            _ if s.starts_with('Z') => Ok(O2Subgroup::Cyclic(index(&s[1..], "cyclic")?)),
            _ if s.starts_with('D') => Ok(O2Subgroup::Dihedral(index(&s[1..], "dihedral")?)),
            _ => Err(Error::Parse(format!("unknown O(2) subgroup {s:?}"))),
        }
    }
}

/// Common quotient `L` of a Goursat datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quotient {
    Trivial,
    Cyclic(usize),
    /// Dihedral of order `2n`, `n >= 2`.
    Dihedral(usize),
}

impl Quotient {
    pub fn order(self) -> usize {
        match self {
            Quotient::Trivial => 1,
            Quotient::Cyclic(n) => n,
            Quotient::Dihedral(n) => 2 * n,
        }
    }

    /// `H / H0` for a normal pair of closed O(2) subgroups with finite quotient.
    pub fn of(h: O2Subgroup, h0: O2Subgroup) -> Result<Self> {
        use O2Subgroup::*;
        let bad =
            || Error::InvalidArgument(format!("{h0} is not a finite-index normal subgroup of {h}"));
        Ok(match (h, h0) {
            (a, b) if a == b => Quotient::Trivial,
            (O2, SO2) => Quotient::Cyclic(2),
            (Cyclic(n), Cyclic(d)) if n % d == 0 => Quotient::Cyclic(n / d),
            (Dihedral(n), Cyclic(d)) if n % d == 0 => {
                if n / d == 1 {
                    Quotient::Cyclic(2)
                } else {
                    Quotient::Dihedral(n / d)
                }
            }
            (Dihedral(n), Dihedral(d)) if n == 2 * d => Quotient::Cyclic(2),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Trivial => write!(f, "Z1"),
            Quotient::Cyclic(n) => write!(f, "Z{n}"),
            Quotient::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

impl FromStr for Quotient {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(r) = s.strip_prefix('Z') {
            let n = index(r, "quotient")?;
            return Ok(if n == 1 {
                Quotient::Trivial
            } else {
                Quotient::Cyclic(n)
            });
        }
        if let Some(r) = s.strip_prefix('D') {
            let n = index(r, "quotient")?;
            return Ok(if n == 1 {
                Quotient::Cyclic(2)
            } else {
                Quotient::Dihedral(n)
            });
        }
        Err(Error::Parse(format!("unknown quotient {s:?}")))
    }
}
