use std::fmt;

use super::spec::TopologySpec;
use crate::convergence::{converges_to, NetSpec, Policy, Verdict};
use crate::error::Result;
use crate::lattice::{ideal_member, IdealCertificate, LatticeElement};
use crate::par::Execution;
use crate::pseudonorm::{dominates, equals_pointwise, index_grid, PseudonormExpr};
use crate::report::{Row, Status};
use crate::scalar::Scalar;
use crate::topology::tau_prime;

/// How the first topology relates to the second on the evidence gathered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Finer,
    Coarser,
    Equal,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Finer => "finer-evidence",
            Relation::Coarser => "coarser-evidence",
            Relation::Equal => "equal-evidence",
            Relation::Incomparable => "incomparable-evidence",
        })
    }
}

/// Whether one member is dominated by a single member of the other family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceRow {
    /// `true` for members of the second family checked against the first.
    pub second_by_first: bool,
    pub member: String,
    pub dominated_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetEvidence {
    pub net: String,
    pub limit: String,
    pub in_first: Verdict,
    pub in_second: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    pub dominance: Vec<DominanceRow>,
    pub nets: Vec<NetEvidence>,
}

/// Every member of `target` is pointwise below some single member of `source`.
fn dominance_rows(
    source: &TopologySpec,
    target: &TopologySpec,
    samples: &[LatticeElement],
    exec: Execution,
    second_by_first: bool,
) -> Result<Vec<DominanceRow>> {
    let mut rows = Vec::with_capacity(target.members().len());
    for q in target.members() {
        let mut by = None;
        for p in source.members() {
            if dominates(p, q, samples, exec)?.holds {
                by = Some(p.to_string());
                break;
            }
        }
        rows.push(DominanceRow { second_by_first, member: q.to_string(), dominated_by: by });
    }
    Ok(rows)
}

/// Compare `tau1` with `tau2`; the relation describes `tau1`.
///
/// `tau1` is reported finer when every generator of `tau2` is dominated by a
/// generator of `tau1` on `samples` and no net converges in `tau1` without
/// converging in `tau2`.
pub fn compare_on(
    tau1: &TopologySpec,
    tau2: &TopologySpec,
    nets: &[(NetSpec, LatticeElement)],
    samples: &[LatticeElement],
    policy: &Policy,
) -> Result<ComparisonVerdict> {
    let mut dominance = dominance_rows(tau1, tau2, samples, policy.exec, true)?;
    dominance.extend(dominance_rows(tau2, tau1, samples, policy.exec, false)?);
    let mut evidence = Vec::with_capacity(nets.len());
    for (net, limit) in nets {
        evidence.push(NetEvidence {
            net: net.to_string(),
            limit: limit.to_string(),
            in_first: converges_to(net, limit, tau1, policy)?,
            in_second: converges_to(net, limit, tau2, policy)?,
        });
    }
    let dom = |flag: bool| dominance.iter().filter(|r| r.second_by_first == flag).all(|r| r.dominated_by.is_some());
    let first_finer = dom(true) && evidence.iter().all(|e| !e.in_first.converges() || e.in_second.converges());
    let second_finer = dom(false) && evidence.iter().all(|e| !e.in_second.converges() || e.in_first.converges());
    let relation = match (first_finer, second_finer) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Finer,
        (false, true) => Relation::Coarser,
        (false, false) => Relation::Incomparable,
    };
    Ok(ComparisonVerdict { relation, dominance, nets: evidence })
}

/// Whether two generating families agree as sets of functions on `samples`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEquality {
    pub holds: bool,
    /// A member with no pointwise-equal partner in the other family.
    pub unmatched: Option<String>,
}

pub fn family_equal(
    first: &[PseudonormExpr],
    second: &[PseudonormExpr],
    samples: &[LatticeElement],
    exec: Execution,
) -> Result<FamilyEquality> {
    for (a, b) in [(first, second), (second, first)] {
        for p in a {
            let mut found = false;
            for q in b {
                if equals_pointwise(p, q, samples, exec)?.holds {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(FamilyEquality { holds: false, unmatched: Some(p.to_string()) });
            }
        }
    }
    Ok(FamilyEquality { holds: true, unmatched: None })
}

/// Indices at which the ideal transfer bound is checked exactly.
fn transfer_indices(horizon: u64) -> Vec<u64> {
    index_grid(horizon.min(256))
}

/// For each candidate `b`, check that nets converging under the singleton
/// restrictions over `gens` also converge under those over `b`, and that
/// `p(|x|∧|b|) <= m · Σ_j p(|x|∧a_j)` with `m = ⌈max(K, 1)⌉` along each net.
pub fn ideal_equivalence_check(
    tau: &TopologySpec,
    gens: &[LatticeElement],
    candidates: &[LatticeElement],
    nets: &[(NetSpec, LatticeElement)],
    policy: &Policy,
) -> Result<Vec<Row>> {
    let base = tau_prime(tau, gens)?;
    let premises: Vec<Verdict> =
        nets.iter().map(|(net, limit)| converges_to(net, limit, &base, policy)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for b in candidates {
        let cert = ideal_member(b, gens)?;
        let IdealCertificate::Member { constant, .. } = &cert else {
            rows.push(Row::new(format!("b = {b}"), "ideal membership", "member", cert.to_string(), Status::Refusal));
            continue;
        };
        let verified = cert.verify(b)?;
        rows.push(Row::invariant(
            format!("b = {b}"),
            "certificate re-verifies |b| <= K*sum(gens)",
            format!("K = {constant}, verified = {verified}"),
            verified,
        ));
        let m = Scalar::from_big(constant.clone().max_of(Scalar::one()).ceil(), 1.into());
        let target = tau_prime(tau, &[b.abs()?])?;
        for ((net, limit), premise) in nets.iter().zip(&premises) {
            let subject = format!("b = {b}, net {net} -> {limit}");
            if !premise.converges() {
                rows.push(Row::new(
                    subject,
                    "ideal transfer",
                    "premise",
                    format!("premise fails: {premise}"),
                    Status::Info,
                ));
                continue;
            }
            let bound_ok = transfer_bound_holds(tau, gens, b, &m, net, limit, policy.horizon)?;
            let verdict = converges_to(net, limit, &target, policy)?;
            rows.push(Row::invariant(
                subject,
                "ideal transfer",
                format!("{verdict}; bound with m = {m}: {}", if bound_ok { "holds" } else { "violated" }),
                bound_ok && verdict.converges(),
            ));
        }
    }
    Ok(rows)
}

fn transfer_bound_holds(
    tau: &TopologySpec,
    gens: &[LatticeElement],
    b: &LatticeElement,
    m: &Scalar,
    net: &NetSpec,
    limit: &LatticeElement,
    horizon: u64,
) -> Result<bool> {
    let b = b.abs()?;
    for k in transfer_indices(horizon) {
        let x = net.value_at(k)?.sub(limit)?.abs()?;
        for p in tau.members() {
            let lhs = p.evaluate(&x.meet(&b)?)?;
            let mut rhs = Scalar::zero();
            for a in gens {
                rhs = &rhs + &p.evaluate(&x.meet(a)?)?;
            }
            if lhs > m * &rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::Rate;
    use crate::lattice::{SeqElement, Space};
    use crate::topology::{unbounded_topology, CollectionSpec};

    fn sup_on(space: Space) -> TopologySpec {
        TopologySpec::base(vec![PseudonormExpr::sup()]).unwrap().with_space(space).unwrap()
    }

    fn grid2() -> Vec<LatticeElement> {
        let mut out = Vec::new();
        for a in -3..=3 {
            for b in -3..=3 {
                out.push(LatticeElement::ints(&[a, b]));
            }
        }
        out
    }

    #[test]
    fn unbounded_topology_is_coarser() {
        let tau = sup_on(Space::Coord(2));
        let aa = CollectionSpec::new(vec![vec![LatticeElement::ints(&[1, 1])]]).unwrap();
        let u = unbounded_topology(&tau, &aa).unwrap();
        let nets = [(NetSpec::scaled(LatticeElement::ints(&[1, 1]), Rate::Harmonic), Space::Coord(2).zero())];
        let p = Policy::default().with_horizon(50);
        let v = compare_on(&u, &tau, &nets, &grid2(), &p).unwrap();
        assert_eq!(v.relation, Relation::Coarser);
        let v = compare_on(&tau, &tau, &nets, &grid2(), &p).unwrap();
        assert_eq!(v.relation, Relation::Equal);
    }

    #[test]
    fn set_sup_is_finer_than_singletons() {
        let tau = sup_on(Space::Coord(2));
        let a = vec![LatticeElement::ints(&[1, 0]), LatticeElement::ints(&[0, 2])];
        let whole = unbounded_topology(&tau, &CollectionSpec::new(vec![a.clone()]).unwrap()).unwrap();
        let singles = unbounded_topology(&tau, &CollectionSpec::new(vec![a]).unwrap().singletons()).unwrap();
        let v = compare_on(&whole, &singles, &[], &grid2(), &Policy::default()).unwrap();
        assert_eq!(v.relation, Relation::Finer);
    }

    #[test]
    fn ideal_transfer_examples() {
        let tau = sup_on(Space::Coord(3));
        let gens = [LatticeElement::ints(&[1, 0, 0]), LatticeElement::ints(&[0, 1, 0])];
        let candidates = [LatticeElement::ints(&[2, 3, 0]), LatticeElement::ints(&[0, 0, 1])];
        let nets = [(NetSpec::scaled(LatticeElement::ints(&[1, 1, 0]), Rate::Harmonic), Space::Coord(3).zero())];
        let rows =
            ideal_equivalence_check(&tau, &gens, &candidates, &nets, &Policy::default().with_horizon(100)).unwrap();
        let statuses: Vec<Status> = rows.iter().map(|r| r.status).collect();
        assert_eq!(statuses, vec![Status::Pass, Status::Pass, Status::Refusal]);

        let tau = sup_on(Space::Seq);
        let e = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()));
        let two_e = e.scale(&Scalar::from_int(2));
        let nets = [(NetSpec::UnitWalk, Space::Seq.zero())];
        let rows = ideal_equivalence_check(&tau, &[e], &[two_e], &nets, &Policy::default().with_horizon(100)).unwrap();
        assert!(rows.iter().all(|r| r.status == Status::Pass), "{rows:?}");
        assert!(rows[0].computed.contains("K = 2"));
    }
}
