use std::collections::BTreeMap;

use serde::Serialize;

use crate::checks::Check;
use crate::corpus::SubgroupRef;

pub const SCHEMA_VERSION: u32 = 1;

/// A failing check together with the subgroups it names.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub check: Check,
    pub subgroups: Vec<SubgroupRef>,
    pub variants: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryRecord {
    pub group: String,
    pub order: usize,
    /// `None` for suites that do not depend on k.
    pub k: Option<u32>,
    pub pass: bool,
    /// Variant values of the record's main equivalence, when it has one.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub variants: BTreeMap<String, bool>,
    /// Checks evaluated and how many of them had a true premise.
    pub checks: usize,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub elapsed_ms: f64,
}

/// A suite-level condition that is not a per-entry check, such as a label
/// needing at least one non-vacuous instance.
#[derive(Clone, Debug, Serialize)]
pub struct Requirement {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Informational search result; never affects the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub query: String,
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<SubgroupRef>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    /// Non-vacuous instances per check label.
    pub instances: BTreeMap<String, usize>,
    pub requirements: Vec<Requirement>,
    pub findings: Vec<Finding>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub k: Vec<u32>,
    pub entries: Vec<EntryRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryRecord> {
        self.entries.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
