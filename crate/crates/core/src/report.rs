//! Per-axiom check results shared by every verification routine.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of a single axiom or property check.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity, with instance counts and a failing witness if any.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxiomCheck {
    /// Stable identifier of the axiom, e.g. "Br2" or "jacobi".
    pub axiom: String,
    pub status: CheckStatus,
    /// Basis tensor (and both sides) where the identity first failed.
    pub witness: Option<String>,
    /// Number of instances evaluated.
    pub checked: usize,
    /// Instances outside the truncation scope.
    pub skipped: usize,
}

impl AxiomCheck {
    pub fn pass(axiom: &str, checked: usize, skipped: usize) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            status: CheckStatus::Pass,
            witness: None,
            checked,
            skipped,
        }
    }

    pub fn fail(axiom: &str, witness: String, checked: usize, skipped: usize) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            status: CheckStatus::Fail,
            witness: Some(witness),
            checked,
            skipped,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// True when every check in the list passed (skips allowed).
pub fn all_passed(checks: &[AxiomCheck]) -> bool {
    checks.iter().all(AxiomCheck::passed)
}

/// First failing check, if any.
pub fn first_failure(checks: &[AxiomCheck]) -> Option<&AxiomCheck> {
    checks.iter().find(|c| !c.passed())
}

/// Collects checks, keeping deterministic order by construction.
pub fn merge(mut a: Vec<AxiomCheck>, b: Vec<AxiomCheck>) -> Vec<AxiomCheck> {
    a.extend(b);
    a
}
