//! Named, deterministic reproductions of the examples and claims.

mod cases;

use std::fmt;

use crate::convergence::{Policy, Verdict};
use crate::error::{Error, Result};
use crate::report::{ConfigEcho, Report, Row};

pub const DEFAULT_SEED: u64 = 42;

/// A catalog entry.
#[derive(Clone, Copy, Debug)]
pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    /// Always run in float mode, whatever the policy says.
    pub float_only: bool,
    run: fn(&Policy, u64) -> Result<Vec<Row>>,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {}", self.name, self.summary)
    }
}

pub const CATALOG: [Scenario; 9] = [
    Scenario {
        name: "c0-uo-not-o",
        summary: "unit vectors in c0 are uo-null but not order null",
        float_only: false,
        run: cases::c0_uo_not_o,
    },
    Scenario {
        name: "c0-harmonic-probe",
        summary: "unit vectors against the probe (1/n): values 1/k, norm values 1",
        float_only: false,
        run: cases::c0_harmonic_probe,
    },
    Scenario {
        name: "finite-dim-strong-unit",
        summary: "sup norm on R^5 against a strong-unit probe, 100 random nets",
        float_only: false,
        run: cases::finite_dim_strong_unit,
    },
    Scenario {
        name: "increasing-net",
        summary: "increasing nets converge in tau iff in tau', with the 2|x| witness",
        float_only: false,
        run: cases::increasing_net,
    },
    Scenario {
        name: "lebesgue",
        summary: "Lebesgue property of tau and tau' on decreasing null nets",
        float_only: false,
        run: cases::lebesgue,
    },
    Scenario {
        name: "product",
        summary: "unbounded-then-product equals product-then-unbounded on R^2 x R^3",
        float_only: false,
        run: cases::product,
    },
    Scenario {
        name: "remark11-r2",
        summary: "(2 + sin k, 0) in the Euclidean plane against the nonnegative x-axis",
        float_only: true,
        run: cases::euclid_r2,
    },
    Scenario {
        name: "ideal-invariance",
        summary: "replacing generators by members of their ideal preserves convergence",
        float_only: false,
        run: cases::ideal_invariance,
    },
    Scenario {
        name: "hausdorff",
        summary: "separating unbounded pseudonorms for random nonzero elements",
        float_only: false,
        run: cases::hausdorff,
    },
];

pub fn list_scenarios() -> &'static [Scenario] {
    &CATALOG
}

pub fn find_scenario(name: &str) -> Result<&'static Scenario> {
    CATALOG.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// Run a scenario; the report's aggregate separates artifact bugs from claims
/// that were not reproduced.
pub fn run_scenario(name: &str, policy: &Policy, seed: u64) -> Result<Report> {
    let scenario = find_scenario(name)?;
    let policy =
        if scenario.float_only { Policy { mode: crate::convergence::Mode::Float, ..*policy } } else { *policy };
    let rows = (scenario.run)(&policy, seed)?;
    Ok(Report {
        command: format!("scenario run {name}"),
        config: ConfigEcho { mode: policy.mode.to_string(), horizon: policy.horizon, eps: policy.eps, seed },
        aggregate: Report::scenario_aggregate(&rows),
        rows,
    })
}

/// A claim row about whether a verdict converges.
pub(crate) fn verdict_claim(subject: impl Into<String>, label: &str, converges: bool, v: &Verdict) -> Row {
    let expected = if converges { "converges" } else { "does not converge" };
    Row::claim(subject, label, expected, v.to_string(), v.converges() == converges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(run_scenario("nope", &Policy::default(), 1), Err(Error::UnknownScenario(_))));
        assert_eq!(list_scenarios().len(), 9);
    }
}
