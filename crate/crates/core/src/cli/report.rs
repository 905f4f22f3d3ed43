//! Verification reports and their JSON/text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conventions::{Conventions, SignLedger};
use crate::matrix::Matrix;
use crate::scalar::{Field, ScalarMode};
use crate::subspaces::Subspace;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarEcho {
    pub mode: String,
    #[serde(default)]
    pub epsilon: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionLedger {
    pub name: String,
    pub flat_map: String,
    pub flat_sign: String,
    pub coadjoint: String,
    pub coadjoint_sign: String,
    /// Global sign relating the printed formulas to the flat-inverse
    /// constructions, when a comparison in this run fixed it.
    pub sigma: Option<String>,
    pub sigma_fixed_by: Option<String>,
    pub comparisons: Vec<Comparison>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default)]
    pub detail: Option<String>,
    #[serde(default)]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub flags: BTreeMap<String, String>,
    pub scalar: ScalarEcho,
    pub conventions: ConventionLedger,
    pub checks: Vec<Check>,
    pub objects: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub status: String,
    pub exit_code: i32,
    #[serde(default)]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, input: Option<String>, flags: BTreeMap<String, String>, mode: ScalarMode, conv: Conventions) -> Self {
        let scalar = match mode {
            ScalarMode::Exact => ScalarEcho {
                mode: "exact".into(),
                epsilon: None,
            },
            ScalarMode::Float { epsilon } => ScalarEcho {
                mode: "float".into(),
                epsilon: Some(format!("{epsilon:e}")),
            },
        };
        Report {
            command: command.to_string(),
            input,
            flags,
            scalar,
            conventions: ConventionLedger {
                name: conv.name().into(),
                flat_map: conv.describe_flat().into(),
                flat_sign: conv.flat_sign().to_string(),
                coadjoint: conv.describe_coadjoint().into(),
                coadjoint_sign: conv.coadjoint_sign().to_string(),
                sigma: None,
                sigma_fixed_by: None,
                comparisons: Vec::new(),
            },
            checks: Vec::new(),
            objects: BTreeMap::new(),
            notes: Vec::new(),
            status: String::new(),
            exit_code: EXIT_PASS,
            error: None,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Option<String>, witness: Option<Value>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
            witness,
        });
    }

    pub fn object(&mut self, name: &str, value: Value) {
        self.objects.insert(name.into(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn record_ledger(&mut self, ledger: &SignLedger) {
        self.conventions.sigma = ledger.sigma().map(|s| s.to_string());
        self.conventions.sigma_fixed_by = ledger.fixed_by().map(String::from);
        self.conventions.comparisons = ledger
            .entries()
            .iter()
            .map(|(label, rel)| Comparison {
                label: label.clone(),
                relation: serde_json::to_value(rel)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default(),
            })
            .collect();
    }

    /// Sets status and exit code from the checks.
    pub fn finish(mut self) -> Self {
        if self.error.is_some() {
            self.status = "error".into();
            self.exit_code = EXIT_INPUT;
        } else if self.checks.iter().all(|c| c.pass) {
            self.status = "pass".into();
            self.exit_code = EXIT_PASS;
        } else {
            self.status = "fail".into();
            self.exit_code = EXIT_FAIL;
        }
        self
    }

    pub fn input_error(mut self, message: String) -> Self {
        self.error = Some(message);
        self.finish()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(i) = &self.input {
            let _ = writeln!(out, "input: {i}");
        }
        for (k, v) in &self.flags {
            let _ = writeln!(out, "flag {k}: {v}");
        }
        match &self.scalar.epsilon {
            Some(e) => {
                let _ = writeln!(out, "scalar: {} (epsilon {e})", self.scalar.mode);
            }
            None => {
                let _ = writeln!(out, "scalar: {}", self.scalar.mode);
            }
        }
        let c = &self.conventions;
        let _ = writeln!(out, "conventions: {}", c.name);
        let _ = writeln!(out, "  flat map: {} (sign {})", c.flat_map, c.flat_sign);
        let _ = writeln!(out, "  coadjoint: {} (sign {})", c.coadjoint, c.coadjoint_sign);
        match (&c.sigma, &c.sigma_fixed_by) {
            (Some(s), Some(by)) => {
                let _ = writeln!(out, "  sigma: {s} (fixed by {by})");
            }
            _ => {
                let _ = writeln!(out, "  sigma: not observed");
            }
        }
        for cmp in &c.comparisons {
            let _ = writeln!(out, "  compared {}: {}", cmp.label, cmp.relation);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "ERROR {e}");
        }
        for ch in &self.checks {
            let _ = write!(out, "{} {}", if ch.pass { "PASS" } else { "FAIL" }, ch.name);
            if let Some(d) = &ch.detail {
                let _ = write!(out, ": {d}");
            }
            if let Some(w) = &ch.witness {
                let _ = write!(out, " [witness {w}]");
            }
            out.push('\n');
        }
        for (name, v) in &self.objects {
            let _ = writeln!(out, "{name}:");
            render_value(&mut out, v, 1);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "status: {} (exit {})", self.status, self.exit_code);
        out
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.iter().all(|i| i.is_array()) && !items.is_empty() => {
            for i in items {
                if i.as_array().map(|r| r.iter().all(|x| !x.is_array())).unwrap_or(false) {
                    let _ = writeln!(out, "{pad}{}", row_text(i));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_value(out, i, depth + 1);
                }
            }
        }
        Value::Array(items) if items.is_empty() => {
            let _ = writeln!(out, "{pad}(empty)");
        }
        Value::Array(_) => {
            let _ = writeln!(out, "{pad}{}", row_text(v));
        }
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_array() || x.is_object() {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, depth + 1);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar_text(x));
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other));
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn row_text(v: &Value) -> String {
    let items: Vec<String> = v.as_array().map(|r| r.iter().map(scalar_text).collect()).unwrap_or_default();
    format!("[{}]", items.join(", "))
}

pub fn matrix_value<T: Field>(m: &Matrix<T>) -> Value {
    Value::from(m.render_rows().into_iter().map(|r| Value::from(r)).collect::<Vec<_>>())
}

pub fn subspace_value<T: Field>(s: &Subspace<T>) -> Value {
    serde_json::json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "basis": s.render(),
    })
}

pub fn vector_value<T: Field>(v: &[T]) -> Value {
    Value::from(v.iter().map(|x| x.render()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = Report::new("demo", Some("x.json".into()), BTreeMap::new(), ScalarMode::Exact, Conventions::default());
        r.check("one", true, Some("fine".into()), None);
        r.check("two", false, None, Some(serde_json::json!([1, 2])));
        r.object("m", matrix_value(&Matrix::<Q>::identity(2)));
        let r = r.finish();
        assert_eq!(r.exit_code, EXIT_FAIL);
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(r.to_text().contains("FAIL two"));
    }
}
