use serde::{Deserialize, Serialize};

use super::{FiniteGroup, DEFAULT_CAP};
use crate::error::{Error, Result};

/// Declarative group description: a named constructor or permutation generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constructor", rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Permutations {
        #[serde(default)]
        name: Option<String>,
        generators: Vec<Vec<usize>>,
        #[serde(default)]
        cap: Option<usize>,
    },
}

impl GroupSpec {
    /// Parse compact names: `z4`, `c4`, `d4`, `d4xz2`, `z2xz2xz2`.
    pub fn parse_name(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s.is_empty() {
            return Err(Error::BadSpec("empty group name".into()));
        }
        let parts: Vec<&str> = s.split('x').collect();
        let mut factors = Vec::new();
        for p in parts {
            let (head, num) = p.split_at(1.min(p.len()));
            let n: usize = num
                .parse()
                .map_err(|_| Error::BadSpec(format!("bad factor `{p}`")))?;
            factors.push(match head {
                "z" | "c" => GroupSpec::Cyclic { n },
                "d" => GroupSpec::Dihedral { n },
                _ => return Err(Error::BadSpec(format!("unknown factor `{p}`"))),
            });
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupSpec::Product { factors }
        })
    }

    /// Parse either a compact name or a JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            serde_json::from_str(t).map_err(|e| Error::BadSpec(e.to_string()))
        } else {
            Self::parse_name(t)
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::BadSpec("empty product".into()))?;
                let mut g = first.build()?;
                for f in it {
                    g = FiniteGroup::direct_product(&g, &f.build()?)?;
                }
                Ok(g)
            }
            GroupSpec::Permutations {
                name,
                generators,
                cap,
            } => FiniteGroup::from_permutations(
                name.as_deref().unwrap_or("G"),
                generators,
                cap.unwrap_or(DEFAULT_CAP),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_json() {
        assert_eq!(
            GroupSpec::parse("d4xz2").unwrap().build().unwrap().order(),
            16
        );
        let js = r#"{"constructor":"product","factors":[{"constructor":"dihedral","n":3},{"constructor":"cyclic","n":2}]}"#;
        assert_eq!(GroupSpec::parse(js).unwrap().build().unwrap().order(), 12);
        let js = r#"{"constructor":"permutations","generators":[[1,2,3,0],[3,2,1,0]]}"#;
        assert_eq!(GroupSpec::parse(js).unwrap().build().unwrap().order(), 8);
        assert!(GroupSpec::parse("q8").is_err());
        assert!(GroupSpec::parse("d").is_err());
    }
}
