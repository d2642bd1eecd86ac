use serde::Serialize;

use crate::exact::{EntryDiff, GridOutcome, LegMatrix};

/// Evidence attached to a failed check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn elements(elements: Vec<usize>) -> Self {
        Witness { elements: Some(elements), ..Default::default() }
    }

    pub fn note(note: impl Into<String>) -> Self {
        Witness { note: Some(note.into()), ..Default::default() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl From<EntryDiff> for Witness {
    fn from(d: EntryDiff) -> Self {
        Witness {
            row: Some(d.row),
            col: Some(d.col),
            lhs: Some(d.lhs.to_string()),
            rhs: Some(d.rhs.to_string()),
            ..Default::default()
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckResult { check: check.into(), pass: true, witness: None }
    }

    pub fn fail(check: impl Into<String>, witness: Witness) -> Self {
        CheckResult { check: check.into(), pass: false, witness: Some(witness) }
    }

    pub fn from_option(check: impl Into<String>, failure: Option<Witness>) -> Self {
        match failure {
            None => CheckResult::pass(check),
            Some(w) => CheckResult::fail(check, w),
        }
    }

    /// Bit-exact matrix comparison.
    pub fn equal(check: impl Into<String>, lhs: &LegMatrix, rhs: &LegMatrix) -> Self {
        CheckResult::from_option(check, lhs.first_difference(rhs).map(Witness::from))
    }

    /// Passes when `m` is the zero matrix.
    pub fn zero(check: impl Into<String>, m: &LegMatrix) -> Self {
        let zero = LegMatrix::zeros(m.legs(), m.dim());
        CheckResult::equal(check, m, &zero)
    }

    pub fn from_grid(check: impl Into<String>, outcome: GridOutcome) -> Self {
        let witness = outcome.witness.map(|w| Witness {
            point: Some(w.point),
            row: Some(w.row),
            col: Some(w.col),
            lhs: Some(w.lhs.to_string()),
            rhs: Some(w.rhs.to_string()),
            ..Default::default()
        });
        CheckResult { check: check.into(), pass: outcome.pass, witness }
    }
}

pub fn all_pass(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.pass)
}
