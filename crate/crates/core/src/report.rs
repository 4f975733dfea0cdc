//! Verification reports shared by every exact and numeric check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one named check.
///
/// `status` is `inconclusive` exactly when truncation interfered, and a
/// `fail` always carries `first_failure`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub model: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction_holding: Option<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, model: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            model: model.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            max_residual: None,
            first_failure: None,
            direction_holding: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Records a failure; only the first one is kept.
    pub fn fail_at(&mut self, at: impl ToString) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.first_failure = Some(at.to_string());
        }
    }

    pub fn mark_inconclusive(&mut self) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.check, self.model, self.status)?;
        if let Some(at) = &self.first_failure {
            write!(f, " (first failure at {at})")?;
        }
        if let Some(r) = self.max_residual {
            write!(f, " max residual {r:e}")?;
        }
        if let Some(d) = &self.direction_holding {
            write!(f, " holding: {d}")?;
        }
        Ok(())
    }
}

/// Worst status across a batch, `Pass` when empty.
pub fn worst_status<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Status {
    reports
        .into_iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_failure_only() {
        let mut r = VerificationReport::new("ladder", "monomial");
        r.fail_at("n=2");
        r.fail_at("n=3");
        assert_eq!(r.first_failure.as_deref(), Some("n=2"));
        r.mark_inconclusive();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn json_keys_sorted_and_optional_fields_skipped() {
        let r = VerificationReport::new("commutator", "bessel").param("nu", "5/2");
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"check":"commutator","model":"bessel","params":{"nu":"5/2"},"status":"pass"}"#
        );
    }

    #[test]
    fn worst_status_orders_fail_last() {
        let mut a = VerificationReport::new("a", "m");
        let b = VerificationReport::new("b", "m");
        a.mark_inconclusive();
        assert_eq!(worst_status([&a, &b]), Status::Inconclusive);
        a.fail_at("x");
        assert_eq!(worst_status([&a, &b]), Status::Fail);
    }
}
