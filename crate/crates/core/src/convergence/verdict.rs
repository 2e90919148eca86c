use std::fmt;

use crate::par::Execution;
use crate::report::Status;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode `{s}`, expected exact or float")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Policy {
    pub horizon: u64,
    pub eps: f64,
    pub mode: Mode,
    pub exec: Execution,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { horizon: 10_000, eps: 1e-6, mode: Mode::Exact, exec: Execution::default() }
    }
}

impl Policy {
    pub fn float() -> Self {
        Policy { mode: Mode::Float, ..Policy::default() }
    }

    pub fn with_horizon(self, horizon: u64) -> Self {
        Policy { horizon, ..self }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerdictStatus {
    /// The value sequence has a closed form with limit zero.
    ConvergesExact,
    /// Values fell below `eps` by the horizon; no closed form.
    SupportedNumeric {
        eps: f64,
        horizon: u64,
    },
    /// No closed form, and the values stayed above `eps` late in the run.
    DivergesNumeric {
        eps: f64,
        horizon: u64,
        tail_sup: f64,
    },
    /// Values stay at or above `lower_bound` from `from_index` on.
    Refuted {
        lower_bound: Scalar,
        from_index: u64,
    },
    Inconclusive {
        reason: String,
    },
}

impl VerdictStatus {
    pub fn converges(&self) -> bool {
        matches!(self, VerdictStatus::ConvergesExact | VerdictStatus::SupportedNumeric { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, VerdictStatus::ConvergesExact | VerdictStatus::Refuted { .. })
    }

    pub fn report_status(&self) -> Status {
        match self {
            VerdictStatus::ConvergesExact => Status::ConvergesExact,
            VerdictStatus::SupportedNumeric { .. } => Status::SupportedNumeric,
            VerdictStatus::DivergesNumeric { .. } => Status::DivergesNumeric,
            VerdictStatus::Refuted { .. } => Status::Refuted,
            VerdictStatus::Inconclusive { .. } => Status::Inconclusive,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            VerdictStatus::ConvergesExact => 0,
            VerdictStatus::SupportedNumeric { .. } => 1,
            VerdictStatus::Inconclusive { .. } => 2,
            VerdictStatus::DivergesNumeric { .. } => 3,
            VerdictStatus::Refuted { .. } => 4,
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictStatus::ConvergesExact => write!(f, "converges_exact"),
            VerdictStatus::SupportedNumeric { eps, horizon } => {
                write!(f, "supported_numeric(eps={eps:e}, horizon={horizon})")
            }
            VerdictStatus::DivergesNumeric { eps, horizon, tail_sup } => {
                write!(f, "diverges_numeric(eps={eps:e}, horizon={horizon}, tail_sup={tail_sup:.6})")
            }
            VerdictStatus::Refuted { lower_bound, from_index } => {
                write!(f, "refuted(lower_bound={lower_bound}, from k={from_index})")
            }
            VerdictStatus::Inconclusive { reason } => write!(f, "inconclusive({reason})"),
        }
    }
}

/// A sampled value of a row's sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Scalar),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(s) => s.to_f64(),
            Value::Float(v) => *v,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(s) => write!(f, "{s}"),
            Value::Float(v) => write!(f, "{v:.6}"),
        }
    }
}

/// Verdict for one generating pseudonorm, probe or dominator.
#[derive(Clone, Debug, PartialEq)]
pub struct MemberVerdict {
    pub member: String,
    pub status: VerdictStatus,
    /// Explanation of the closed form used, if any.
    pub detail: String,
    pub trace: Vec<(u64, Value)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// Label of the row that decided a refutation.
    pub witness: Option<String>,
    pub rows: Vec<MemberVerdict>,
}

impl Verdict {
    /// All rows converge ⇒ converges; any refuted row ⇒ refuted.
    pub fn aggregate(rows: Vec<MemberVerdict>) -> Verdict {
        let worst = rows.iter().rev().max_by_key(|r| r.status.rank());
        let (status, witness) = match worst {
            None => (VerdictStatus::ConvergesExact, None),
            Some(r) => {
                let w = (!r.status.converges()).then(|| r.member.clone());
                (r.status.clone(), w)
            }
        };
        Verdict { status, witness, rows }
    }

    pub fn converges(&self) -> bool {
        self.status.converges()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " via {w}")?;
        }
        Ok(())
    }
}
