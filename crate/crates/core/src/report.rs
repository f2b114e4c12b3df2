//! Verification reports with a stable JSON layout.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A value printed in the literature.
    Published,
    /// A value obtained from an independent computation, such as brute-force enumeration.
    Computed,
    /// A value that holds by definition or construction.
    Definition,
}

/// One verified claim. Failed checks carry both sides verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub status: Status,
    /// Point counts keyed by the prime they were taken over.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub samples: BTreeMap<u64, u64>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
}

impl Check {
    /// Compares an expected value with a computed one.
    pub fn compare<T: PartialEq + Display>(claim: impl Into<String>, provenance: Provenance, expected: &T, computed: &T) -> Check {
        let ok = expected == computed;
        Check {
            claim: claim.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            samples: BTreeMap::new(),
            provenance,
            expected: (!ok).then(|| expected.to_string()),
            computed: (!ok).then(|| computed.to_string()),
        }
    }

    /// A boolean check; `detail` is reported on failure.
    pub fn holds(claim: impl Into<String>, provenance: Provenance, ok: bool, detail: impl FnOnce() -> String) -> Check {
        Check {
            claim: claim.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            samples: BTreeMap::new(),
            provenance,
            expected: None,
            computed: (!ok).then(detail),
        }
    }

    /// A check that could not be carried out because the computation returned an error.
    pub fn error(claim: impl Into<String>, provenance: Provenance, err: impl Display) -> Check {
        Check { claim: claim.into(), status: Status::Fail, samples: BTreeMap::new(), provenance, expected: None, computed: Some(format!("error: {err}")) }
    }

    pub fn with_samples(mut self, samples: BTreeMap<u64, u64>) -> Check {
        self.samples = samples;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check: `pass claim` or `FAIL claim: expected … computed …`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match c.status {
                Status::Pass => out.push_str(&format!("pass  {}\n", c.claim)),
                Status::Fail => {
                    out.push_str(&format!("FAIL  {}", c.claim));
                    if let Some(e) = &c.expected {
                        out.push_str(&format!("\n      expected: {e}"));
                    }
                    if let Some(v) = &c.computed {
                        out.push_str(&format!("\n      computed: {v}"));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(serde_json::to_string(&Report::new()).unwrap(), r#"{"checks":[]}"#);
    }

    #[test]
    fn passing_check_layout() {
        let samples = BTreeMap::from([(2, 5), (3, 7), (5, 11)]);
        let c = Check::compare("chi=3", Provenance::Published, &3, &3).with_samples(samples);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"claim":"chi=3","status":"pass","samples":{"2":5,"3":7,"5":11},"provenance":"published"}"#
        );
    }

    #[test]
    fn failing_check_keeps_both_sides() {
        let c = Check::compare("phi", Provenance::Published, &"t1+t2", &"t1");
        assert!(!c.passed());
        assert_eq!(c.expected.as_deref(), Some("t1+t2"));
        assert_eq!(c.computed.as_deref(), Some("t1"));
    }
}
