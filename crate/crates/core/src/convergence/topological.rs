use super::moving::walk_value;
use super::net::{Deficit, NetSpec};
use super::verdict::{MemberVerdict, Mode, Policy, Value, Verdict, VerdictStatus};
use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::pseudonorm::{index_grid, PseudonormExpr};
use crate::scalar::Scalar;
use crate::topology::TopologySpec;

/// Decide `x_k → limit` in the topology generated by `tau`, one row per
/// generating pseudonorm.
pub fn converges_to(net: &NetSpec, limit: &LatticeElement, tau: &TopologySpec, policy: &Policy) -> Result<Verdict> {
    tau.check(limit)?;
    net.space().check(limit)?;
    let float_only = net.is_float() || tau.uses_float_only();
    if float_only {
        if policy.mode == Mode::Exact {
            return Err(Error::FloatOnly(format!("{net} under {tau}")));
        }
        let rows = policy.exec.try_map(tau.members(), |q| float_row(q, net, limit, policy))?;
        return Ok(Verdict::aggregate(rows));
    }
    let deficit = net.deficit(limit)?;
    let rows = policy.exec.try_map(tau.members(), |q| exact_row(q, &deficit, policy))?;
    Ok(Verdict::aggregate(rows))
}

fn trace(q: &PseudonormExpr, deficit: &Deficit, horizon: u64) -> Result<Vec<(u64, Value)>> {
    index_grid(horizon).into_iter().map(|k| Ok((k, Value::Exact(q.evaluate(&deficit.at(k))?)))).collect()
}

/// Closed-form decision for one pseudonorm `q` on an exact deficit.
pub fn exact_row(q: &PseudonormExpr, deficit: &Deficit, policy: &Policy) -> Result<MemberVerdict> {
    let (status, detail) = match deficit {
        Deficit::EventuallyConstant { head, tail } => {
            let v = q.evaluate(tail)?;
            let from = head.len() as u64 + 1;
            if v.is_zero() {
                (VerdictStatus::ConvergesExact, format!("q(x_k - x) = 0 for k >= {from}"))
            } else {
                (
                    VerdictStatus::Refuted { lower_bound: v.clone(), from_index: from },
                    format!("q(x_k - x) = {v} for k >= {from}"),
                )
            }
        }
        Deficit::Affine { offset, rate, dir } => {
            let q0 = q.evaluate(offset)?;
            let c = q.scaling_bound(dir)?;
            if q0.is_zero() {
                (VerdictStatus::ConvergesExact, format!("q(x_k - x) <= ({rate})*{c}"))
            } else {
                let half = &q0 / &Scalar::from_int(2);
                let from = rate.first_index_below(&c, &half);
                (
                    VerdictStatus::Refuted { lower_bound: half.clone(), from_index: from },
                    format!("q(x_k - x) >= {q0} - ({rate})*{c} >= {half} for k >= {from}"),
                )
            }
        }
        Deficit::Walk { offset } => {
            let (v, n) = walk_value(q, offset)?;
            for k in [n, n + 1, 2 * n + 3] {
                let direct = q.evaluate(&deficit.at(k))?;
                if direct != v.at(k) {
                    return Err(Error::Consistency(format!(
                        "closed form {v} of {q} disagrees with direct value {direct} at k={k}"
                    )));
                }
            }
            let closed = format!("q(x_k - x) = {v} for k >= {n}");
            if v.d.is_zero() {
                (VerdictStatus::ConvergesExact, closed)
            } else {
                let mut from = n;
                if v.c.is_negative() {
                    let zero_at = (-&v.c / &v.d).floor_index().unwrap_or(0);
                    from = from.max(zero_at + 1);
                }
                let lower = v.at(from).min_of(v.d.clone());
                (VerdictStatus::Refuted { lower_bound: lower, from_index: from }, closed)
            }
        }
    };
    Ok(MemberVerdict { member: q.to_string(), status, detail, trace: trace(q, deficit, policy.horizon)? })
}

fn float_row(q: &PseudonormExpr, net: &NetSpec, limit: &LatticeElement, policy: &Policy) -> Result<MemberVerdict> {
    let l = limit.to_f64_coords()?;
    let value = |k: u64| -> Result<f64> {
        let x = net.value_at_f64(k)?;
        let d: Vec<f64> = x.iter().zip(&l).map(|(a, b)| a - b).collect();
        q.evaluate_f64(&d)
    };

    if let Some(w) = persistent_floor(net, limit) {
        let bound = q.exact_minorant().evaluate(&w)?;
        if bound.is_positive() {
            let trace = index_grid(policy.horizon)
                .into_iter()
                .map(|k| Ok((k, Value::Float(value(k)?))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(MemberVerdict {
                member: q.to_string(),
                status: VerdictStatus::Refuted { lower_bound: bound, from_index: 1 },
                detail: format!("|x_k - x| >= {w} for every k"),
                trace,
            });
        }
    }

    let h = policy.horizon.max(1);
    let mut tail_sup = 0.0f64;
    let mut trace = Vec::new();
    let grid = index_grid(h);
    for k in 1..=h {
        let v = value(k)?;
        if k > h / 2 {
            tail_sup = tail_sup.max(v);
        }
        if grid.binary_search(&k).is_ok() {
            trace.push((k, Value::Float(v)));
        }
    }
    let status = if tail_sup < policy.eps {
        VerdictStatus::SupportedNumeric { eps: policy.eps, horizon: h }
    } else {
        VerdictStatus::DivergesNumeric { eps: policy.eps, horizon: h, tail_sup }
    };
    Ok(MemberVerdict {
        member: q.to_string(),
        status,
        detail: format!("max of q(x_k - x) over {} < k <= {h} is {tail_sup:.6}", h / 2),
        trace,
    })
}

/// A positive `w` with `|x_k − limit| >= w` for all `k`, from the ranges of
/// the sinusoid coordinates.
fn persistent_floor(net: &NetSpec, limit: &LatticeElement) -> Option<LatticeElement> {
    let NetSpec::Sinusoid { base, amp } = net else { return None };
    let l = limit.as_coord()?.coords();
    let floor: Vec<Scalar> = base
        .iter()
        .zip(amp)
        .zip(l)
        .map(|((b, a), lj)| {
            let centre = b - lj;
            let lo = &centre - &a.abs();
            let hi = &centre + &a.abs();
            if lo.is_positive() {
                lo
            } else if hi.is_negative() {
                -hi
            } else {
                Scalar::zero()
            }
        })
        .collect();
    floor.iter().any(Scalar::is_positive).then(|| LatticeElement::coord(floor))
}
