use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use sha2::{Digest, Sha256};

use deform_core::report::Report;
use deform_core::verify::Criterion;

use crate::args::Cli;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command produced before it is wrapped into a [`RunReport`].
#[derive(Debug, Default)]
pub struct Outcome {
    pub instances: Vec<String>,
    pub outputs: BTreeMap<String, Json>,
    pub report: Report,
    pub criteria: Vec<Criterion>,
}

impl Outcome {
    pub fn instance(&mut self, id: impl Into<String>) {
        self.instances.push(id.into());
    }

    pub fn output(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("plain data serializes");
        self.outputs.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.report.all_passed() && self.criteria.iter().all(Criterion::passed)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    /// SHA-256 of the parsed configuration (subcommand, arguments, seed).
    pub config_hash: String,
    pub seed: u64,
    pub instances: Vec<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub outputs: BTreeMap<String, Json>,
    #[serde(flatten)]
    pub report: Report,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<Criterion>,
}

pub fn config_hash(cli: &Cli) -> String {
    let canonical = serde_json::to_string(cli).expect("arguments serialize");
    Sha256::digest(canonical.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl RunReport {
    pub fn new(cli: &Cli, argv: &[String], o: Outcome, error: Option<String>) -> Self {
        let passed = error.is_none() && o.passed();
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: argv.to_vec(),
            config_hash: config_hash(cli),
            seed: cli.seed,
            instances: o.instances,
            passed,
            error,
            outputs: o.outputs,
            report: o.report,
            criteria: o.criteria,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, criterion, output and value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} {}", status(self.passed), self.command.join(" "));
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        for i in &self.instances {
            let _ = writeln!(s, "instance: {i}");
        }
        for (k, v) in &self.outputs {
            let shown = match v {
                Json::String(x) => x.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "{k} = {shown}");
        }
        for c in &self.criteria {
            let _ = writeln!(s, "criterion {:>2} {} {}", c.id, status(c.passed()), c.title);
            for f in c.report.failures() {
                let _ = writeln!(s, "    {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
        }
        for c in &self.report.checks {
            let _ = write!(s, "{} {} ({} cases)", status(c.passed), c.name, c.cases);
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(s, ": {w}");
                }
                None => s.push('\n'),
            }
        }
        for v in &self.report.values {
            let _ = match v.error {
                Some(e) => writeln!(s, "{} = {:e} ± {:.1e}", v.name, v.value, e),
                None => writeln!(s, "{} = {:e}", v.name, v.value),
            };
        }
        for n in &self.report.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }

    /// Short summary for stderr.
    pub fn summary(&self) -> String {
        let checks = self.report.checks.len() + self.criteria.len();
        let failed = self.report.failures().len() + self.criteria.iter().filter(|c| !c.passed()).count();
        match &self.error {
            Some(e) => format!("error: {e}"),
            None if failed == 0 => format!("ok: {checks} checks passed"),
            None => format!("FAILED: {failed} of {checks} checks"),
        }
    }
}
