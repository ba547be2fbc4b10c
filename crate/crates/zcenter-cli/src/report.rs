//! Versioned reports and their text rendering.

use serde::Serialize;
use serde_json::{Map, Value};
use std::fmt::Write as _;

pub const SCHEMA: &str = "zcenter-report";
/// Bumped on any change to the report fields.
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub inputs: Vec<String>,
    pub inputs_digest: String,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    pub artifacts: Value,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, inputs_digest: String, seed: u64, tolerance: f64) -> Report {
        Report {
            schema: SCHEMA,
            version: VERSION,
            command: command.to_string(),
            inputs,
            inputs_digest,
            seed,
            tolerance,
            checks: Vec::new(),
            artifacts: Value::Object(Map::new()),
            pass: true,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, residual: f64, pass: bool) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), residual, pass });
    }

    /// A residual check against `tol`.
    pub fn below(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.check(name, residual, residual < tol);
    }

    /// A yes/no check with no residual.
    pub fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.check(name, if ok { 0.0 } else { 1.0 }, ok);
    }

    pub fn put<T: Serialize>(&mut self, key: &str, v: T) {
        let v = serde_json::to_value(v).expect("serializable");
        if let Value::Object(m) = &mut self.artifacts {
            m.insert(key.to_string(), v);
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "zcenter {} ({} v{})", self.command, self.schema, self.version);
        let _ = writeln!(s, "inputs: {}", self.inputs.join(" "));
        let _ = writeln!(s, "digest: {}", self.inputs_digest);
        let _ = writeln!(s, "seed: {}  tolerance: {:e}", self.seed, self.tolerance);
        if !self.checks.is_empty() {
            s.push_str("checks:\n");
            let w = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            for c in &self.checks {
                let pad = w - c.name.chars().count();
                let _ = writeln!(s, "  {}{}  {:.3e}  {}", c.name, " ".repeat(pad), c.residual, if c.pass { "pass" } else { "FAIL" });
            }
        }
        if let Value::Object(m) = &self.artifacts {
            if !m.is_empty() {
                s.push_str("artifacts:\n");
                for (k, v) in m {
                    render(k, v, 1, &mut s);
                }
            }
        }
        let _ = writeln!(s, "verdict: {}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !(x.is_array() && !is_leaf(x))),
        _ => true,
    }
}

fn render(key: &str, v: &Value, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    if is_leaf(v) {
        let _ = writeln!(s, "{}{}: {}", pad, key, scalar(v));
        return;
    }
    let _ = writeln!(s, "{}{}:", pad, key);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(k, x, depth + 1, s);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render(&format!("[{}]", i), x, depth + 1, s);
            }
        }
        _ => unreachable!(),
    }
}
