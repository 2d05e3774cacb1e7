//! Verdicts and suite reports shared by every checker.

use std::fmt;

use serde::Serialize;

use crate::algebra::Element;

/// How a boolean answer was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Every element (or tuple) of a finite carrier was examined.
    Exhaustive,
    /// Decided by a formula valid for the whole carrier.
    ClosedForm,
    /// Only a deterministic sample of an infinite carrier was examined.
    Sampled,
}

/// A boolean together with the evidence behind it.
///
/// A sampled `true` is weaker than a proved one; a `false` found by sampling
/// is still a genuine refutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn proved(holds: bool) -> Self {
        Verdict { holds, evidence: Evidence::ClosedForm }
    }

    pub fn exhaustive(holds: bool) -> Self {
        Verdict { holds, evidence: Evidence::Exhaustive }
    }

    pub fn sampled(holds: bool) -> Self {
        Verdict { holds, evidence: Evidence::Sampled }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.holds, self.evidence) {
            (true, Evidence::Sampled) => write!(f, "sampled true"),
            (false, Evidence::Sampled) => write!(f, "false (refuted on sample)"),
            (h, _) => write!(f, "{h}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    SampledPass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        !matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::SampledPass => "sampled-pass",
            Status::Fail => "fail",
        })
    }
}

/// A violating tuple plus a human-readable evaluation trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Name of the individual check that failed, used for replay.
    pub check: String,
    #[serde(serialize_with = "serialize_elements")]
    pub elements: Vec<Element>,
    pub trace: String,
}

fn serialize_elements<S: serde::Serializer>(els: &[Element], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(els.iter().map(|e| e.to_string()))
}

/// Outcome of one named check inside a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    /// Number of tuples evaluated.
    pub tuples: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    /// Number of carrier points the suite ranged over.
    pub points: usize,
    /// First counterexample over all checks, in check order.
    pub counterexample: Option<Counterexample>,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn from_checks(suite: impl Into<String>, points: usize, checks: Vec<CheckReport>) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::SampledPass) {
            Status::SampledPass
        } else {
            Status::Pass
        };
        let counterexample = checks.iter().find_map(|c| c.counterexample.clone());
        SuiteReport { suite: suite.into(), status, points, counterexample, checks }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}, {} points", self.suite, self.status, self.points)?;
        if let Some(ce) = &self.counterexample {
            let els: Vec<String> = ce.elements.iter().map(|e| e.to_string()).collect();
            write!(f, "\n  counterexample [{}] at ({}): {}", ce.check, els.join(", "), ce.trace)?;
        }
        Ok(())
    }
}
