//! Report assembly: a deterministic JSON document plus an aligned text table.
//!
//! The JSON never contains wall-clock timing or cache status, so identical
//! (config, seed, engine version) runs are byte-identical; timing goes to the
//! human-readable table only.

use std::collections::BTreeMap;

use braidmm_core::envelope::StabilizationInfo;
use braidmm_core::report::{AxiomCheck, CheckStatus};
use serde::{Deserialize, Serialize};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MmSummary {
    pub injective: bool,
    pub surjective_onto_primitives: bool,
    pub bracket_matches: bool,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub engine_version: String,
    pub schema_version: u32,
    pub config_hash: String,
    pub name: String,
    pub kind: String,
    pub subcommand: String,
    pub degree: usize,
    pub buffer: usize,
    pub seed: u64,
    pub window: i64,
    pub checks: Vec<AxiomCheck>,
    /// named dimension tables (filtration, primitive filtration, ...)
    pub dimensions: BTreeMap<String, Vec<usize>>,
    /// named sparse matrices as (row, col, scalar) triples, e.g. the
    /// coproduct of the free bialgebra with rows indexing flattened pairs
    pub matrices: BTreeMap<String, Vec<(usize, usize, String)>>,
    pub stabilization: Option<StabilizationInfo>,
    pub mm: Option<MmSummary>,
    /// deterministic free-form notes (bracket tables, twist outcomes, ...)
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
            && self.mm.as_ref().map(|m| m.iso).unwrap_or(true)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned text table for humans.
    pub fn text_table(&self, elapsed: std::time::Duration, cache_hit: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "braidmm {} {} (kind {}, degree {}, buffer {}, seed {})\n",
            self.subcommand, self.name, self.kind, self.degree, self.buffer, self.seed
        ));
        let width = self
            .checks
            .iter()
            .map(|c| c.axiom.len())
            .max()
            .unwrap_or(8)
            .max(8);
        out.push_str(&format!(
            "  {:<width$}  {:<7}  {:>8}  {:>8}\n",
            "check",
            "status",
            "checked",
            "skipped",
            width = width
        ));
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            out.push_str(&format!(
                "  {:<width$}  {:<7}  {:>8}  {:>8}\n",
                c.axiom,
                status,
                c.checked,
                c.skipped,
                width = width
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {:<width$}  witness: {}\n", "", w, width = width));
            }
        }
        for (name, dims) in &self.dimensions {
            let list: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("  {name}: ({})\n", list.join(", ")));
        }
        if let Some(s) = &self.stabilization {
            out.push_str(&format!(
                "  stabilization: buffer {} vs {} stable = {}\n",
                s.buffer,
                s.buffer + 1,
                s.stable
            ));
        }
        if let Some(m) = &self.mm {
            out.push_str(&format!(
                "  mm unit: injective {}, onto primitives {}, brackets match {}, iso {}\n",
                m.injective, m.surjective_onto_primitives, m.bracket_matches, m.iso
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!(
            "  result: {}{}  ({:.2?})\n",
            if self.all_passed() { "PASS" } else { "FAIL" },
            if cache_hit { "  [cache hit]" } else { "" },
            elapsed
        ));
        out
    }
}
