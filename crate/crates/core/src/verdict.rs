//! Verdicts with counterexample witnesses, shared by every checker.

use crate::finring::AdditiveSubgroup;
use serde::Serialize;

/// Outcome of one checked condition. A failing verdict always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(witness: W) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub fn from_first_failure(failure: Option<W>) -> Self {
        match failure {
            Some(w) => Verdict::fail(w),
            None => Verdict::pass(),
        }
    }
}

/// A subgroup as it appears in reports: order plus canonical basis rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: u64,
    pub basis: Vec<Vec<u64>>,
}

impl From<&AdditiveSubgroup> for SubgroupSummary {
    fn from(s: &AdditiveSubgroup) -> Self {
        SubgroupSummary {
            order: u64::try_from(s.order()).unwrap_or(u64::MAX),
            basis: s.canonical_basis().to_vec(),
        }
    }
}
