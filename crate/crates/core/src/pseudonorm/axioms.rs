use std::fmt;
use std::str::FromStr;

use super::RieszMap;
use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::par::Execution;
use crate::scalar::Scalar;

/// A scalar sequence tending to zero, used to probe condition (4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NullSequence {
    Harmonic,
    Geometric,
}

impl NullSequence {
    pub const BATTERY: [NullSequence; 2] = [NullSequence::Harmonic, NullSequence::Geometric];

    pub fn value(self, k: u64) -> Scalar {
        match self {
            NullSequence::Harmonic => Scalar::recip_index(k),
            NullSequence::Geometric => Scalar::inv_pow2(u32::try_from(k).unwrap_or(u32::MAX)),
        }
    }

    /// Largest index worth evaluating numerically before `f64` underflows.
    fn numeric_cap(self, horizon: u64) -> u64 {
        match self {
            NullSequence::Harmonic => horizon,
            NullSequence::Geometric => horizon.min(1000),
        }
    }
}

impl fmt::Display for NullSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NullSequence::Harmonic => "1/k",
            NullSequence::Geometric => "1/2^k",
        })
    }
}

impl FromStr for NullSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1/k" => Ok(NullSequence::Harmonic),
            "1/2^k" => Ok(NullSequence::Geometric),
            _ => Err(Error::InvalidArgument(format!("unknown null sequence `{s}`"))),
        }
    }
}

/// Indices `1..=10`, the powers of two up to `horizon`, and `horizon`.
pub fn index_grid(horizon: u64) -> Vec<u64> {
    let mut grid: Vec<u64> = (1..=horizon.min(10)).collect();
    let mut p = 16u64;
    while p < horizon {
        grid.push(p);
        p *= 2;
    }
    if horizon > 10 {
        grid.push(horizon);
    }
    grid
}

/// Re-checkable evidence for a failed condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<LatticeElement>,
    pub values: Vec<Scalar>,
    pub note: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ", self.note)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, " with values ")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail(Witness),
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomStatus::Pass)
    }

    fn from_witness(w: Option<Witness>) -> Self {
        w.map_or(AxiomStatus::Pass, AxiomStatus::Fail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalingOutcome {
    /// `p(λ_k x) <= λ_k · bound` for every sample, so the values are null.
    Exact {
        bound: Scalar,
    },
    /// Every sample fell below `eps` by `horizon`.
    Numeric {
        eps: f64,
        horizon: u64,
        worst: f64,
    },
    Fail(Witness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub sequence: NullSequence,
    pub outcome: ScalingOutcome,
}

/// Conditions (1)–(5) checked over a sample set.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub map: String,
    pub samples: usize,
    pub pairs: usize,
    pub nonnegative: AxiomStatus,
    pub zero_at_zero: AxiomStatus,
    pub subadditive: AxiomStatus,
    pub scaling: Vec<ScalingRow>,
    pub monotone: AxiomStatus,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Whether condition (4) was decided exactly for every sequence.
    pub fn scaling_exact(&self) -> bool {
        self.scaling.iter().all(|r| matches!(r.outcome, ScalingOutcome::Exact { .. }))
    }

    /// Condition number and witness for every failed condition.
    pub fn failures(&self) -> Vec<(u8, &Witness)> {
        let mut out = Vec::new();
        for (n, status) in [(1, &self.nonnegative), (2, &self.zero_at_zero), (3, &self.subadditive)] {
            if let AxiomStatus::Fail(w) = status {
                out.push((n, w));
            }
        }
        for row in &self.scaling {
            if let ScalingOutcome::Fail(w) = &row.outcome {
                out.push((4, w));
            }
        }
        if let AxiomStatus::Fail(w) = &self.monotone {
            out.push((5, w));
        }
        out
    }

    pub fn condition_passed(&self, n: u8) -> bool {
        self.failures().iter().all(|(m, _)| *m != n)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} samples, {} pairs", self.map, self.samples, self.pairs)?;
        let line = |f: &mut fmt::Formatter<'_>, n: u8, s: &AxiomStatus| match s {
            AxiomStatus::Pass => writeln!(f, "  ({n}) pass"),
            AxiomStatus::Fail(w) => writeln!(f, "  ({n}) FAIL: {w}"),
        };
        line(f, 1, &self.nonnegative)?;
        line(f, 2, &self.zero_at_zero)?;
        line(f, 3, &self.subadditive)?;
        for row in &self.scaling {
            match &row.outcome {
                ScalingOutcome::Exact { bound } => writeln!(f, "  (4) {} exact, bound {bound}", row.sequence)?,
                ScalingOutcome::Numeric { eps, horizon, worst } => {
                    writeln!(f, "  (4) {} numeric, below {eps:e} by k={horizon} (worst {worst:e})", row.sequence)?
                }
                ScalingOutcome::Fail(w) => writeln!(f, "  (4) {} FAIL: {w}", row.sequence)?,
            }
        }
        line(f, 5, &self.monotone)
    }
}

#[derive(Default)]
struct Findings {
    nonnegative: Option<Witness>,
    subadditive: Option<Witness>,
    monotone: Option<Witness>,
}

impl Findings {
    fn merge(&mut self, other: Findings) {
        self.nonnegative = self.nonnegative.take().or(other.nonnegative);
        self.subadditive = self.subadditive.take().or(other.subadditive);
        self.monotone = self.monotone.take().or(other.monotone);
    }
}

struct Sample {
    x: LatticeElement,
    abs: LatticeElement,
    value: Scalar,
}

const NUMERIC_EPS: f64 = 1e-6;

/// Check conditions (1)–(5) on `samples`.
///
/// Conditions (1), (2), (3) and (5) are decided exactly on every unordered
/// pair of samples. Condition (4) is decided exactly through the map's
/// scaling bound when it has one and numerically up to `horizon` otherwise.
pub fn check_axioms<M: RieszMap + ?Sized>(
    p: &M,
    samples: &[LatticeElement],
    battery: &[NullSequence],
    horizon: u64,
    exec: Execution,
) -> Result<AxiomReport> {
    let first = samples.first().ok_or_else(|| Error::InvalidArgument("empty sample set".into()))?;
    let space = first.space();
    for x in samples {
        space.check(x)?;
    }

    let prepared: Vec<Sample> =
        exec.try_map(samples, |x| Ok::<_, Error>(Sample { x: x.clone(), abs: x.abs()?, value: p.eval(x)? }))?;

    let zero = space.zero();
    let at_zero = p.eval(&zero)?;
    let zero_at_zero = AxiomStatus::from_witness((!at_zero.is_zero()).then(|| Witness {
        elements: vec![zero],
        values: vec![at_zero],
        note: "p(0) != 0".into(),
    }));

    let rows = exec.map_range(0..prepared.len(), |i| check_row(p, &prepared, i));
    let mut findings = Findings::default();
    for row in rows {
        findings.merge(row?);
    }

    let scaling =
        battery.iter().map(|&seq| check_scaling(p, &prepared, seq, horizon, exec)).collect::<Result<Vec<_>>>()?;

    let n = prepared.len();
    Ok(AxiomReport {
        map: p.describe(),
        samples: n,
        pairs: n * (n + 1) / 2,
        nonnegative: AxiomStatus::from_witness(findings.nonnegative),
        zero_at_zero,
        subadditive: AxiomStatus::from_witness(findings.subadditive),
        scaling,
        monotone: AxiomStatus::from_witness(findings.monotone),
    })
}

fn check_row<M: RieszMap + ?Sized>(p: &M, samples: &[Sample], i: usize) -> Result<Findings> {
    let mut out = Findings::default();
    let s = &samples[i];

    if s.value.is_negative() {
        out.nonnegative =
            Some(Witness { elements: vec![s.x.clone()], values: vec![s.value.clone()], note: "p(x) < 0".into() });
    }
    // x, -x and |x| share a modulus, so (5) forces equal values.
    for (other, label) in [(&s.abs, "|x|"), (&s.x.neg(), "-x")] {
        if out.monotone.is_some() {
            break;
        }
        let v = p.eval(other)?;
        if v != s.value {
            out.monotone = Some(Witness {
                elements: vec![s.x.clone(), other.clone()],
                values: vec![s.value.clone(), v],
                note: format!("p(x) != p({label}) although both have modulus |x|"),
            });
        }
    }

    for t in &samples[i..] {
        if out.nonnegative.is_some() && out.subadditive.is_some() && out.monotone.is_some() {
            break;
        }
        if out.subadditive.is_none() || out.nonnegative.is_none() {
            let sum = s.x.add(&t.x)?;
            let v = p.eval(&sum)?;
            if v.is_negative() && out.nonnegative.is_none() {
                out.nonnegative =
                    Some(Witness { elements: vec![sum.clone()], values: vec![v.clone()], note: "p(x) < 0".into() });
            }
            if out.subadditive.is_none() && v > &s.value + &t.value {
                out.subadditive = Some(Witness {
                    elements: vec![s.x.clone(), t.x.clone()],
                    values: vec![v, s.value.clone(), t.value.clone()],
                    note: "p(x+y) > p(x) + p(y)".into(),
                });
            }
        }
        if out.monotone.is_none() {
            out.monotone = monotone_pair(p, s, t)?;
        }
    }
    Ok(out)
}

fn monotone_pair<M: RieszMap + ?Sized>(p: &M, s: &Sample, t: &Sample) -> Result<Option<Witness>> {
    let violation = |small: &Sample, large: &Sample| Witness {
        elements: vec![small.x.clone(), large.x.clone()],
        values: vec![small.value.clone(), large.value.clone()],
        note: "|x| <= |y| but p(x) > p(y)".into(),
    };
    if s.value > t.value && s.abs.leq(&t.abs)? {
        return Ok(Some(violation(s, t)));
    }
    if t.value > s.value && t.abs.leq(&s.abs)? {
        return Ok(Some(violation(t, s)));
    }
    let meet = s.abs.meet(&t.abs)?;
    let v = p.eval(&meet)?;
    let top = s.value.clone().min_of(t.value.clone());
    if v > top {
        let smaller = if s.value <= t.value { s } else { t };
        return Ok(Some(Witness {
            elements: vec![meet, smaller.x.clone()],
            values: vec![v, smaller.value.clone()],
            note: "|x| <= |y| but p(x) > p(y)".into(),
        }));
    }
    Ok(None)
}

/// Indices at which an exact bound is spot-checked.
const SPOT_INDICES: [u64; 5] = [1, 2, 3, 8, 64];

fn check_scaling<M: RieszMap + ?Sized>(
    p: &M,
    samples: &[Sample],
    seq: NullSequence,
    horizon: u64,
    exec: Execution,
) -> Result<ScalingRow> {
    enum Per {
        Bound(Scalar),
        Numeric(f64),
        Fail(Witness),
    }

    let per = exec.map(samples, |s| -> Result<Per> {
        if let Some(bound) = p.scaling_bound(&s.x)? {
            for &k in SPOT_INDICES.iter().filter(|&&k| k <= horizon) {
                let lambda = seq.value(k);
                let v = p.eval(&s.x.scale(&lambda))?;
                if v > &lambda * &bound {
                    return Ok(Per::Fail(Witness {
                        elements: vec![s.x.clone()],
                        values: vec![lambda, v, bound],
                        note: format!("scaling bound violated along {seq} at k={k}"),
                    }));
                }
            }
            return Ok(Per::Bound(bound));
        }
        let cap = seq.numeric_cap(horizon);
        let last = p.eval(&s.x.scale(&seq.value(cap)))?;
        let value = last.to_f64();
        if value.is_finite() && value < NUMERIC_EPS {
            Ok(Per::Numeric(value))
        } else {
            Ok(Per::Fail(Witness {
                elements: vec![s.x.clone()],
                values: vec![seq.value(cap), last],
                note: format!("p(λ_k x) not below {NUMERIC_EPS:e} along {seq} by k={cap}"),
            }))
        }
    });

    let mut bound = Scalar::zero();
    let mut worst: Option<f64> = None;
    for r in per {
        match r? {
            Per::Bound(b) => bound = bound.max_of(b),
            Per::Numeric(v) => worst = Some(worst.map_or(v, |w: f64| w.max(v))),
            Per::Fail(w) => return Ok(ScalingRow { sequence: seq, outcome: ScalingOutcome::Fail(w) }),
        }
    }
    let outcome = match worst {
        None => ScalingOutcome::Exact { bound },
        Some(worst) => ScalingOutcome::Numeric { eps: NUMERIC_EPS, horizon: seq.numeric_cap(horizon), worst },
    };
    Ok(ScalingRow { sequence: seq, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudonorm::{FnMap, PseudonormExpr, Restricted};

    fn grid() -> Vec<LatticeElement> {
        let mut out = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                out.push(LatticeElement::ints(&[a, b]));
            }
        }
        out
    }

    #[test]
    fn restricted_sup_norm_passes() {
        let p = PseudonormExpr::sup().restrict(LatticeElement::ints(&[1, 2])).unwrap();
        let r = check_axioms(&p, &grid(), &NullSequence::BATTERY, 10_000, Execution::Sequential).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.scaling_exact());
        assert_eq!(r.pairs, 25 * 26 / 2);
    }

    #[test]
    fn squared_norm_fails_subadditivity() {
        let sq = FnMap::new("sup^2", |x: &LatticeElement| {
            let n = x.sup_norm();
            Ok(&n * &n)
        });
        let r = check_axioms(&sq, &grid(), &NullSequence::BATTERY, 10_000, Execution::Sequential).unwrap();
        assert!(!r.condition_passed(3));
        let (_, w) = r.failures().into_iter().find(|(n, _)| *n == 3).unwrap();
        // Re-check the witness by direct evaluation.
        let (x, y) = (&w.elements[0], &w.elements[1]);
        let f = |e: &LatticeElement| {
            let n = e.sup_norm();
            &n * &n
        };
        assert!(f(&x.add(y).unwrap()) > &f(x) + &f(y));
        assert!(r.condition_passed(4));
        assert!(!r.scaling_exact());
    }

    #[test]
    fn difference_atom_is_caught_by_monotonicity() {
        let diff = FnMap::new("|x1-x2|", |x: &LatticeElement| {
            let c = x.as_coord().unwrap().coords();
            Ok((&c[0] - &c[1]).abs())
        });
        let r = check_axioms(&diff, &grid(), &[], 10, Execution::Sequential).unwrap();
        assert!(!r.condition_passed(5));
        let restricted = Restricted::new(&diff, LatticeElement::ints(&[1, 1])).unwrap();
        let r = check_axioms(&restricted, &grid(), &[], 10, Execution::Sequential).unwrap();
        assert!(!r.condition_passed(5));
    }

    #[test]
    fn empty_samples_are_rejected() {
        assert!(check_axioms(&PseudonormExpr::sup(), &[], &[], 10, Execution::Sequential).is_err());
    }

    #[test]
    fn grid_shape() {
        assert_eq!(index_grid(5), vec![1, 2, 3, 4, 5]);
        assert_eq!(index_grid(100), vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 32, 64, 100]);
    }
}
