use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One `{class, coeff}` entry of a serialized formal sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub class: String,
    pub coeff: i64,
}

macro_rules! formal_sum {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name(BTreeMap<String, i64>);

        impl $name {
            pub fn zero() -> Self {
                Self(BTreeMap::new())
            }
            pub fn generator(class: impl Into<String>) -> Self {
                Self::term(class, 1)
            }
            pub fn term(class: impl Into<String>, coeff: i64) -> Self {
                let mut s = Self::zero();
                s.add_term(class, coeff);
                s
            }
            pub fn add_term(&mut self, class: impl Into<String>, coeff: i64) {
                if coeff == 0 {
                    return;
                }
                let class = class.into();
                let e = self.0.entry(class.clone()).or_insert(0);
                *e += coeff;
                if *e == 0 {
                    self.0.remove(&class);
                }
            }
            pub fn coeff(&self, class: &str) -> i64 {
                self.0.get(class).copied().unwrap_or(0)
            }
            pub fn is_zero(&self) -> bool {
                self.0.is_empty()
            }
            pub fn len(&self) -> usize {
                self.0.len()
            }
            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
            /// Name-sorted nonzero terms.
            pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
                self.0.iter().map(|(k, v)| (k.as_str(), *v))
            }
            pub fn support(&self) -> Vec<&str> {
                self.0.keys().map(|k| k.as_str()).collect()
            }
            pub fn scale(&self, c: i64) -> Self {
                let mut out = Self::zero();
                for (k, v) in self.iter() {
                    out.add_term(k, v * c);
                }
                out
            }
            pub fn add(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (k, v) in other.iter() {
                    out.add_term(k, v);
                }
                out
            }
            pub fn sub(&self, other: &Self) -> Self {
                self.add(&other.scale(-1))
            }
            pub fn terms(&self) -> Vec<Term> {
                self.iter().map(|(k, v)| Term { class: k.to_string(), coeff: v }).collect()
            }
            pub fn from_terms(terms: &[Term]) -> Self {
                let mut out = Self::zero();
                for t in terms {
                    out.add_term(t.class.clone(), t.coeff);
                }
                out
            }
            pub fn to_json(&self) -> serde_json::Value {
                serde_json::to_value(self.terms()).expect("terms serialize")
            }
            pub fn from_json(v: &serde_json::Value) -> Result<Self> {
                let terms: Vec<Term> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(Self::from_terms(&terms))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (k, v) in self.iter() {
                    let sign = if v < 0 { "-" } else if first { "" } else { "+" };
                    let mag = v.abs();
                    if !first {
                        write!(f, " ")?;
                    }
                    if mag == 1 {
                        write!(f, "{sign}({k})")?;
                    } else {
                        write!(f, "{sign}{mag}({k})")?;
                    }
                    first = false;
                }
                Ok(())
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.terms().serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let terms = Vec::<Term>::deserialize(d)?;
                Ok(Self::from_terms(&terms))
            }
        }
    };
}

formal_sum!(
    /// Element of the Burnside ring, keyed by subgroup class names.
    BurnsideElement
);
formal_sum!(
    /// Element of the twisted module, keyed by twisted class names.
    TwistedModuleElement
);
