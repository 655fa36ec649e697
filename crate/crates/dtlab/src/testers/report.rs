//! Verdict and transcript types shared by every tester.

use crate::boolfn::QueryCounts;
use crate::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
    /// The tester ran out of query budget before reaching a verdict.
    Inconclusive,
}

impl Decision {
    /// Process exit code convention: 0 accept, 1 reject, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Decision::Accept => 0,
            Decision::Reject => 1,
            Decision::Inconclusive => 2,
        }
    }
}

/// One random walk / route taken by a walk-based tester.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSummary {
    /// Variables fixed along the walk before it ended.
    pub depth: u32,
    pub verdict: String,
}

/// Machine-readable outcome of a single tester run. Serialization is
/// byte-stable for a fixed seed: wall-clock time is only recorded when the
/// caller explicitly asks for it, so reports from equal-seed runs compare
/// equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterReport {
    pub tester: String,
    pub decision: Decision,
    pub reason: String,
    pub queries: QueryCounts,
    pub walks: Vec<WalkSummary>,
    pub params: serde_json::Value,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TesterReport {
    pub fn new(tester: &str, seed: u64, params: serde_json::Value) -> Self {
        TesterReport {
            tester: tester.to_string(),
            decision: Decision::Inconclusive,
            reason: String::new(),
            queries: QueryCounts::default(),
            walks: Vec::new(),
            params,
            seed,
            elapsed_ms: None,
        }
    }

    pub fn decide(&mut self, decision: Decision, reason: impl Into<String>) {
        self.decision = decision;
        self.reason = reason.into();
    }

    /// Fold a tester body's outcome into the report. Resource exhaustion
    /// (query budget, enumeration caps) is a verdict — inconclusive — not
    /// an error; anything else propagates.
    pub fn finish(
        mut self,
        outcome: crate::Result<(Decision, String)>,
        counts: QueryCounts,
    ) -> crate::Result<TesterReport> {
        self.queries = counts;
        match outcome {
            Ok((decision, reason)) => {
                self.decide(decision, reason);
                Ok(self)
            }
            Err(Error::BudgetExhausted { budget, bb, rex }) => {
                self.queries = QueryCounts { bb, rex };
                self.decide(
                    Decision::Inconclusive,
                    format!("query budget {budget} exhausted"),
                );
                Ok(self)
            }
            Err(Error::EnumerationCap { needed, cap }) => {
                self.decide(
                    Decision::Inconclusive,
                    format!("instance needs {needed} where the cap is {cap}"),
                );
                Ok(self)
            }
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}
