//! Partition bounds on graph spectra and audits of the equality conditions
//! for quotient interlacing.
//!
//! Every verdict separates the hypotheses it checked from the conclusion it
//! evaluated; a conclusion is only evaluated once its hypotheses hold, and a
//! failed conclusion under satisfied hypotheses is a counterexample.

mod bounds;
mod theorems;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub use bounds::{
    evaluate_bound, laplacian_lambda, rhs_value, BoundEvaluator, BoundId, BoundReport, BoundTerm,
    Sense,
};
pub use theorems::{
    audit_corollary1, audit_finck_grohmann, audit_theorem1, audit_theorem1_with, audit_theorem2,
    audit_theorem3, audit_theorem4, audit_theorem5, finck_grohmann_mu1, nonzero_spectra_agree,
    quotient_square_trace_exact, square_trace_exact,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    One,
    Two,
    Three,
    Four,
    Five,
    Corollary1,
    FinckGrohmann,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::One => "1",
            Self::Two => "2",
            Self::Three => "3",
            Self::Four => "4",
            Self::Five => "5",
            Self::Corollary1 => "c1",
            Self::FinckGrohmann => "fg",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s {
            "1" => Self::One,
            "2" => Self::Two,
            "3" => Self::Three,
            "4" => Self::Four,
            "5" => Self::Five,
            "c1" | "C1" => Self::Corollary1,
            "fg" => Self::FinckGrohmann,
            other => {
                return Err(crate::Error::InvalidArgument(format!(
                    "unknown theorem id {other:?}"
                )))
            }
        })
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One named predicate with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypotheses {
    pub hold: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conclusion {
    pub evaluated: bool,
    pub holds: Option<bool>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditVerdict {
    pub theorem: TheoremId,
    pub hypotheses: Hypotheses,
    pub conclusion: Conclusion,
    /// Reported outcomes that are deliberately not part of the conclusion.
    pub observations: Vec<Check>,
    pub witness: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub tolerance: f64,
}

impl AuditVerdict {
    fn new(theorem: TheoremId, tolerance: f64) -> Self {
        Self {
            theorem,
            hypotheses: Hypotheses {
                hold: true,
                checks: Vec::new(),
            },
            conclusion: Conclusion {
                evaluated: false,
                holds: None,
                checks: Vec::new(),
            },
            observations: Vec::new(),
            witness: BTreeMap::new(),
            notes: Vec::new(),
            tolerance,
        }
    }

    fn hypothesis(&mut self, check: Check) -> bool {
        let holds = check.holds;
        self.hypotheses.hold &= holds;
        self.hypotheses.checks.push(check);
        holds
    }

    fn conclude(&mut self, check: Check) {
        self.conclusion.evaluated = true;
        self.conclusion.holds = Some(self.conclusion.holds.unwrap_or(true) && check.holds);
        self.conclusion.checks.push(check);
    }

    fn witness(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.witness.insert(key.to_string(), value);
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.hold
    }

    pub fn conclusion_holds(&self) -> Option<bool> {
        self.conclusion.holds
    }

    /// A conclusion was evaluated and failed.
    pub fn is_counterexample(&self) -> bool {
        self.conclusion.holds == Some(false)
    }

    pub fn conclusion_check(&self, name: &str) -> Option<&Check> {
        self.conclusion.checks.iter().find(|c| c.name == name)
    }

    pub fn observation(&self, name: &str) -> Option<&Check> {
        self.observations.iter().find(|c| c.name == name)
    }

    pub fn witness_f64(&self, key: &str) -> Option<f64> {
        self.witness.get(key).and_then(Value::as_f64)
    }
}
