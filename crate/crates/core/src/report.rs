//! Pass/fail records shared by every checker.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One verified law.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: u64,
    /// First failing instance, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: &str, cases: u64) -> Self {
        Check { name: name.to_string(), passed: true, cases, witness: None }
    }

    pub fn fail(name: &str, cases: u64, witness: String) -> Self {
        Check { name: name.to_string(), passed: false, cases, witness: Some(witness) }
    }

    pub fn from_bool(name: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name, 1)
        } else {
            Check::fail(name, 1, witness())
        }
    }

    /// Runs `f` on every case in parallel; `f` returns a witness on failure.
    /// The reported witness is the first failing case in input order.
    pub fn over<T: Sync>(name: &str, cases: &[T], f: impl Fn(&T) -> Option<String> + Sync) -> Self {
        match cases.par_iter().find_map_first(&f) {
            None => Check::pass(name, cases.len() as u64),
            Some(w) => Check::fail(name, cases.len() as u64, w),
        }
    }
}

/// Numeric output with an optional error estimate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Value {
    pub name: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn value(&mut self, name: &str, value: f64, error: Option<f64>) {
        self.values.push(Value { name: name.to_string(), value, error });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for mut v in other.values {
            v.name = format!("{prefix}{}", v.name);
            self.values.push(v);
        }
        self.notes.extend(other.notes);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}
