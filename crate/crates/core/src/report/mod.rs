//! Versioned JSON reports and their consistency checks.

use serde::Serialize;
use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, TwistedModuleElement};
use crate::degree::DegreeEngine;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// `{schema_version, command, result}`. Object keys come out sorted, so equal results serialize identically.
pub fn envelope<T: Serialize>(command: &str, result: &T) -> Result<Value> {
    let result = serde_json::to_value(result)
        .map_err(|e| Error::Numerical(format!("serialization: {e}")))?;
    Ok(json!({ "schema_version": SCHEMA_VERSION, "command": command, "result": result }))
}

pub fn error_object(kind: &str, message: &str) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": kind, "message": message } })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    /// `pointer: message` for every failed identity.
    pub failures: Vec<String>,
}

struct Checker<'a> {
    gamma1: Option<&'a str>,
    engine: Option<DegreeEngine>,
    failures: Vec<String>,
}

impl Checker<'_> {
    fn fail(&mut self, at: &str, msg: impl Into<String>) {
        self.failures.push(format!("{at}: {}", msg.into()));
    }

    fn engine(&mut self) -> Option<&DegreeEngine> {
        if self.engine.is_none() {
            self.engine = DegreeEngine::from_name(self.gamma1?).ok();
        }
        self.engine.as_ref()
    }

    fn walk(&mut self, v: &Value, at: &str) {
        match v {
            Value::Object(m) => {
                if let (Some(tm), Some(tp), Some(t)) =
                    (m.get("t_minus"), m.get("t_plus"), m.get("t"))
                {
                    match (tm.as_i64(), tp.as_i64(), t.as_i64()) {
                        (Some(a), Some(b), Some(c)) if c == a - b => {}
                        _ => self.fail(at, "t != t_minus - t_plus"),
                    }
                }
                if let (Some(p), Some(b), Some(c)) =
                    (m.get("prefix"), m.get("body"), m.get("combined"))
                {
                    self.check_product(p, b, c, at);
                }
                for (k, x) in m {
                    self.walk(x, &format!("{at}/{k}"));
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    self.walk(x, &format!("{at}/{i}"));
                }
            }
            _ => {}
        }
    }

    fn check_product(&mut self, p: &Value, b: &Value, c: &Value, at: &str) {
        let (Ok(p), Ok(b), Ok(c)) = (
            BurnsideElement::from_json(p),
            TwistedModuleElement::from_json(b),
            TwistedModuleElement::from_json(c),
        ) else {
            return self.fail(at, "prefix, body or combined is not a formal sum");
        };
        let symbolic = p
            .support()
            .iter()
            .any(|n| n.starts_with("O(2)") || n.starts_with("SO(2)"));
        if symbolic {
            // only the unit prefix occurs for O(2) x Gamma1
            let unit = p.len() == 1 && p.iter().all(|(n, v)| v == 1 && n.starts_with("O(2) x "));
            if !unit || b != c {
                self.fail(at, "combined != prefix * body");
            }
            return;
        }
        let Some(e) = self.engine() else {
            return self.fail(
                at,
                "cannot rebuild the group to check combined = prefix * body",
            );
        };
        match e.act(&p, &b) {
            Ok(x) if x == c => {}
            Ok(_) => self.fail(at, "combined != prefix * body"),
            Err(err) => self.fail(at, format!("module action failed: {err}")),
        }
    }

    /// Sum of the center invariants against the reported global sum, and own-block crossings.
    fn check_example(&mut self, r: &Value) {
        let Some(centers) = r.get("centers").and_then(Value::as_array) else {
            return;
        };
        let mut sum = TwistedModuleElement::zero();
        for (i, c) in centers.iter().enumerate() {
            let at = format!("/result/centers/{i}");
            match c
                .pointer("/invariant/combined")
                .map(TwistedModuleElement::from_json)
            {
                Some(Ok(x)) => sum = sum.add(&x),
                _ => self.fail(&at, "missing invariant"),
            }
            let (Some(k), Some(label), Some(t)) = (
                c.pointer("/center/k"),
                c.pointer("/center/label").and_then(Value::as_str),
                c.get("crossing").and_then(Value::as_i64),
            ) else {
                self.fail(&at, "missing center data");
                continue;
            };
            let listed = c
                .pointer(&format!("/invariant/crossings/{k}/crossings"))
                .and_then(Value::as_array)
                .and_then(|xs| {
                    xs.iter()
                        .find(|x| x.get("label").and_then(Value::as_str) == Some(label))
                })
                .and_then(|x| x.get("t").and_then(Value::as_i64))
                .unwrap_or(0);
            if listed != t {
                self.fail(
                    &at,
                    "crossing differs from the invariant's crossing numbers",
                );
            }
        }
        if let Some(g) = r.pointer("/global/sum") {
            if TwistedModuleElement::from_json(g).ok() != Some(sum) {
                self.fail(
                    "/result/global/sum",
                    "sum differs from the sum of center invariants",
                );
            }
        }
    }
}

/// Schema and internal-consistency checks of an emitted report.
pub fn validate_report(v: &Value) -> Validation {
    let mut c = Checker {
        gamma1: None,
        engine: None,
        failures: Vec::new(),
    };
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(s) if s == SCHEMA_VERSION as u64 => {}
        Some(s) => c.fail("/schema_version", format!("unsupported version {s}")),
        None => c.fail("/schema_version", "missing"),
    }
    if v.get("command").and_then(Value::as_str).is_none() {
        c.fail("/command", "missing");
    }
    match v.get("result") {
        Some(r) => {
            c.gamma1 = r.get("gamma1").and_then(Value::as_str);
            c.walk(r, "/result");
            c.check_example(r);
        }
        None => c.fail("/result", "missing"),
    }
    Validation {
        valid: c.failures.is_empty(),
        failures: c.failures,
    }
}
