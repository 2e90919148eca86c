//! Row-based reports shared by the checkers, scenarios and CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// An invariant held.
    Pass,
    /// An invariant failed.
    Fail,
    /// A claim was reproduced.
    Match,
    /// A claim was not reproduced.
    Discrepancy,
    ConvergesExact,
    SupportedNumeric,
    Refuted,
    DivergesNumeric,
    Inconclusive,
    /// An input was rejected before testing, e.g. outside an ideal.
    Refusal,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Match => "match",
            Status::Discrepancy => "discrepancy",
            Status::ConvergesExact => "converges_exact",
            Status::SupportedNumeric => "supported_numeric",
            Status::Refuted => "refuted",
            Status::DivergesNumeric => "diverges_numeric",
            Status::Inconclusive => "inconclusive",
            Status::Refusal => "refusal",
            Status::Info => "info",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    Pass,
    Fail,
    Inconclusive,
    Match,
    /// Invariants hold but a claim was not reproduced.
    ClaimNotReproduced,
    /// An invariant row failed.
    ArtifactBug,
}

impl Aggregate {
    pub fn exit_code(self) -> i32 {
        match self {
            Aggregate::Pass | Aggregate::Match => 0,
            Aggregate::Fail | Aggregate::ClaimNotReproduced | Aggregate::ArtifactBug => 1,
            Aggregate::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Aggregate::Pass => "pass",
            Aggregate::Fail => "fail",
            Aggregate::Inconclusive => "inconclusive",
            Aggregate::Match => "match",
            Aggregate::ClaimNotReproduced => "claim_not_reproduced",
            Aggregate::ArtifactBug => "artifact_bug",
        }
    }
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub subject: String,
    /// A short label naming the claim or invariant the row checks.
    pub paper_ref: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Row {
    pub fn new(
        subject: impl Into<String>,
        paper_ref: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        status: Status,
    ) -> Self {
        Row {
            subject: subject.into(),
            paper_ref: paper_ref.into(),
            expected: expected.into(),
            computed: computed.into(),
            status,
        }
    }

    /// An invariant row: `pass` when `ok`, else `fail`.
    pub fn invariant(
        subject: impl Into<String>,
        label: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        Row::new(subject, label, "holds", computed, if ok { Status::Pass } else { Status::Fail })
    }

    /// A claim row: `match` when `ok`, else `discrepancy`.
    pub fn claim(
        subject: impl Into<String>,
        label: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        Row::new(subject, label, expected, computed, if ok { Status::Match } else { Status::Discrepancy })
    }
}

/// Echo of the run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub horizon: u64,
    pub eps: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub rows: Vec<Row>,
    pub aggregate: Aggregate,
}

impl Report {
    /// Aggregate for scenario-style reports: invariant failures are artifact
    /// bugs, claim discrepancies are reported separately.
    pub fn scenario_aggregate(rows: &[Row]) -> Aggregate {
        if rows.iter().any(|r| r.status == Status::Fail) {
            Aggregate::ArtifactBug
        } else if rows.iter().any(|r| r.status == Status::Discrepancy) {
            Aggregate::ClaimNotReproduced
        } else {
            Aggregate::Match
        }
    }

    /// Aggregate for check-style reports.
    pub fn check_aggregate(rows: &[Row]) -> Aggregate {
        let any = |s: &[Status]| rows.iter().any(|r| s.contains(&r.status));
        if any(&[Status::Fail, Status::Refuted, Status::Discrepancy]) {
            Aggregate::Fail
        } else if any(&[Status::Inconclusive, Status::DivergesNumeric]) {
            Aggregate::Inconclusive
        } else {
            Aggregate::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (mode={}, horizon={}, eps={:e}, seed={})",
            self.command, self.config.mode, self.config.horizon, self.config.eps, self.config.seed
        )?;
        for r in &self.rows {
            writeln!(f, "[{}] {} | {}", r.status, r.subject, r.paper_ref)?;
            writeln!(f, "    expected: {}", r.expected)?;
            writeln!(f, "    computed: {}", r.computed)?;
        }
        writeln!(f, "aggregate: {}", self.aggregate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let rows = vec![
            Row::invariant("axioms", "pseudonorm axioms", "5/5", true),
            Row::claim("net", "uo convergence", "converges", "refuted, bound 1/2", false),
        ];
        Report {
            command: "scenario run x".into(),
            config: ConfigEcho { mode: "exact".into(), horizon: 10_000, eps: 1e-6, seed: 0 },
            aggregate: Report::scenario_aggregate(&rows),
            rows,
        }
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let json = sample().to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert_eq!(back.aggregate, Aggregate::ClaimNotReproduced);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Aggregate::Match.exit_code(), 0);
        assert_eq!(Aggregate::ClaimNotReproduced.exit_code(), 1);
        assert_eq!(Aggregate::Inconclusive.exit_code(), 2);
    }
}
