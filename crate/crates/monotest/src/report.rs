//! JSON report documents.
//!
//! Every command that persists results wraps them in a [`ReportDocument`]:
//! a schema tag, the tool version, a spec echo of the invocation (so a
//! report can be reproduced from itself), and a command-specific body.
//! Serialization is deterministic: struct fields keep declaration order,
//! maps are sorted, and identical specs render byte-identical documents.

use serde::Serialize;
use serde_json::Value;

use crate::function::ViolationPair;
use crate::testers::Verdict;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<B: Serialize> {
    pub schema: u32,
    pub tool_version: &'static str,
    /// Echo of the parameters that produced this report.
    pub spec: Value,
    #[serde(flatten)]
    pub body: B,
}

impl<B: Serialize> ReportDocument<B> {
    pub fn new(spec: Value, body: B) -> Self {
        ReportDocument { schema: SCHEMA_VERSION, tool_version: tool_version(), spec, body }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report bodies serialize");
        text.push('\n');
        text
    }
}

/// One tester run inside a `test` report.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub verdict: Verdict,
    pub queries: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ViolationPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub accept: u64,
    pub reject: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TestAggregates {
    pub verdict_counts: VerdictCounts,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub witnesses: Vec<ViolationPair>,
}

impl TestAggregates {
    /// Aggregates are always derived from the per-trial records, so a reader
    /// can recompute and cross-check them.
    pub fn from_trials(trials: &[TrialRecord]) -> Self {
        let accept = trials.iter().filter(|t| t.verdict == Verdict::Accept).count() as u64;
        let reject = trials.len() as u64 - accept;
        let total_queries: u64 = trials.iter().map(|t| t.queries).sum();
        let mean_queries = if trials.is_empty() {
            0.0
        } else {
            total_queries as f64 / trials.len() as f64
        };
        let max_queries = trials.iter().map(|t| t.queries).max().unwrap_or(0);
        let witnesses = trials.iter().filter_map(|t| t.witness).collect();
        TestAggregates {
            verdict_counts: VerdictCounts { accept, reject },
            mean_queries,
            max_queries,
            witnesses,
        }
    }
}

/// Body of a `test` report.
#[derive(Debug, Clone, Serialize)]
pub struct TestBody {
    pub trials: Vec<TrialRecord>,
    pub aggregates: TestAggregates,
}

impl TestBody {
    pub fn new(trials: Vec<TrialRecord>) -> Self {
        let aggregates = TestAggregates::from_trials(&trials);
        TestBody { trials, aggregates }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn record(trial: u64, verdict: Verdict, queries: u64) -> TrialRecord {
        let witness = match verdict {
            Verdict::Reject => Some(ViolationPair { x: 0, y: 1 }),
            Verdict::Accept => None,
        };
        TrialRecord { trial, verdict, queries, witness }
    }

    #[test]
    fn aggregates_recompute_from_trials() {
        let trials = vec![
            record(0, Verdict::Accept, 10),
            record(1, Verdict::Reject, 4),
            record(2, Verdict::Accept, 6),
        ];
        let agg = TestAggregates::from_trials(&trials);
        assert_eq!(agg.verdict_counts, VerdictCounts { accept: 2, reject: 1 });
        assert_eq!(agg.mean_queries, 20.0 / 3.0);
        assert_eq!(agg.max_queries, 10);
        assert_eq!(agg.witnesses.len(), 1);
    }

    #[test]
    fn documents_render_deterministically() {
        let body = TestBody::new(vec![record(0, Verdict::Accept, 3)]);
        let doc = ReportDocument::new(json!({"command": "test", "seed": 7}), body);
        let a = doc.to_json();
        let b = doc.to_json();
        assert_eq!(a, b);
        assert!(a.starts_with("{\n  \"schema\": 1,"));
        assert!(a.ends_with('\n'));
    }
}
