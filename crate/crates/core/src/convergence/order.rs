use super::net::{Deficit, NetSpec};
use super::verdict::{MemberVerdict, Policy, Value, Verdict, VerdictStatus};
use crate::error::{Error, Result};
use crate::lattice::{Index, LatticeElement, SeqElement};
use crate::pseudonorm::index_grid;
use crate::scalar::Scalar;

/// The Riesz space in which order limits and dominating nets are sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// The whole carrier, including sequences with constant tails.
    Full,
    /// Only null sequences (`d = 0`) on sequence blocks.
    C0,
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ambient::Full => "full",
            Ambient::C0 => "c0",
        })
    }
}

fn in_ambient(x: &LatticeElement, ambient: Ambient) -> bool {
    match (x, ambient) {
        (_, Ambient::Full) | (LatticeElement::Coord(_), _) => true,
        (LatticeElement::Seq(s), Ambient::C0) => s.is_c0(),
        (LatticeElement::Product(blocks), _) => blocks.iter().all(|b| in_ambient(b, ambient)),
    }
}

fn require_ambient(x: &LatticeElement, ambient: Ambient, what: &str) -> Result<()> {
    if in_ambient(x, ambient) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} {x} is not in the {ambient} ambient space")))
    }
}

/// A coordinate of `x` where it is nonzero, with its absolute value.
fn nonzero_coordinate(x: &LatticeElement) -> Option<(String, usize, Scalar)> {
    match x {
        LatticeElement::Coord(v) => {
            v.coords().iter().position(|c| !c.is_zero()).map(|i| (format!("{}", i + 1), i + 1, v.coords()[i].abs()))
        }
        LatticeElement::Seq(s) => s.first_nonzero_index().map(|i| (format!("{i}"), i, s.entry(i).abs())),
        LatticeElement::Product(blocks) => blocks
            .iter()
            .enumerate()
            .find_map(|(j, b)| nonzero_coordinate(b).map(|(label, i, v)| (format!("{j}:{label}"), i, v))),
    }
}

fn coordinate_of(x: &LatticeElement, label: &str) -> Scalar {
    match x {
        LatticeElement::Coord(v) => v.coords()[label.parse::<usize>().expect("own label") - 1].clone(),
        LatticeElement::Seq(s) => s.entry(label.parse().expect("own label")),
        LatticeElement::Product(blocks) => {
            let (j, rest) = label.split_once(':').expect("own label");
            coordinate_of(&blocks[j.parse::<usize>().expect("own label")], rest)
        }
    }
}

fn decided(label: impl Into<String>, status: VerdictStatus, detail: String, trace: Vec<(u64, Value)>) -> MemberVerdict {
    MemberVerdict { member: label.into(), status, detail, trace }
}

/// Order convergence `x_k → limit` with closed-form dominating nets.
pub fn order_converges(net: &NetSpec, limit: &LatticeElement, ambient: Ambient, policy: &Policy) -> Result<Verdict> {
    require_ambient(limit, ambient, "limit")?;
    let deficit = net.deficit(limit)?;
    check_net_ambient(&deficit, ambient)?;
    let row = order_row("order", &deficit, None, ambient, policy.horizon)?;
    Ok(Verdict::aggregate(vec![row]))
}

/// Order convergence of a monotone net; the net's own deficits serve as the
/// dominating net.
pub fn order_converges_monotone(net: &NetSpec, limit: &LatticeElement, policy: &Policy) -> Result<Verdict> {
    if net.is_float() {
        return Err(Error::FloatOnly(net.to_string()));
    }
    let mono = net.monotonicity()?;
    if !mono.is_monotone() {
        return Err(Error::NotMonotone(net.to_string()));
    }
    let mut v = order_converges(net, limit, Ambient::Full, policy)?;
    if v.converges() {
        for row in &mut v.rows {
            row.detail = format!("{mono} net; dominating net |x_k - x|: {}", row.detail);
        }
    }
    Ok(v)
}

/// Unbounded order convergence: `|x_k − limit| ∧ u → 0` in order for every
/// probe `u`.
pub fn uo_converges(
    net: &NetSpec,
    limit: &LatticeElement,
    probes: &[LatticeElement],
    ambient: Ambient,
    policy: &Policy,
) -> Result<Verdict> {
    if probes.is_empty() {
        return Err(Error::InvalidArgument("uo convergence needs at least one probe".into()));
    }
    require_ambient(limit, ambient, "limit")?;
    let deficit = net.deficit(limit)?;
    check_net_ambient(&deficit, ambient)?;
    let mut rows = Vec::with_capacity(probes.len());
    for u in probes {
        limit.space().check(u)?;
        u.require_positive()?;
        require_ambient(u, ambient, "probe")?;
        rows.push(order_row(format!("probe {u}"), &deficit, Some(u), ambient, policy.horizon)?);
    }
    Ok(Verdict::aggregate(rows))
}

fn check_net_ambient(deficit: &Deficit, ambient: Ambient) -> Result<()> {
    match deficit {
        Deficit::EventuallyConstant { head, tail } => {
            for e in head.iter().chain(std::iter::once(tail)) {
                require_ambient(e, ambient, "net value")?;
            }
        }
        Deficit::Affine { offset, dir, .. } => {
            require_ambient(offset, ambient, "net value")?;
            require_ambient(dir, ambient, "net direction")?;
        }
        Deficit::Walk { .. } => {}
    }
    Ok(())
}

/// `z_k = |deficit_k|`, or `|deficit_k| ∧ u` with a probe.
fn modulus(deficit: &Deficit, k: u64, probe: Option<&LatticeElement>) -> Result<LatticeElement> {
    let z = deficit.at(k).abs()?;
    match probe {
        Some(u) => z.meet(u),
        None => Ok(z),
    }
}

fn order_row(
    label: impl Into<String>,
    deficit: &Deficit,
    probe: Option<&LatticeElement>,
    ambient: Ambient,
    horizon: u64,
) -> Result<MemberVerdict> {
    let grid: Vec<u64> = index_grid(horizon);
    let trace = grid
        .iter()
        .map(|&k| Ok((k, Value::Exact(modulus(deficit, k, probe)?.sup_norm()))))
        .collect::<Result<Vec<_>>>()?;
    let meet = |x: LatticeElement| -> Result<LatticeElement> {
        let ax = x.abs()?;
        match probe {
            Some(u) => ax.meet(u),
            None => Ok(ax),
        }
    };

    let (status, detail) = match deficit {
        Deficit::EventuallyConstant { head, tail } => {
            let z = meet(tail.clone())?;
            let from = head.len() as u64 + 1;
            match nonzero_coordinate(&z) {
                None => (
                    VerdictStatus::ConvergesExact,
                    format!("z_k = 0 for k >= {from}; dominating net sup_(j>=k) z_j is a finite join"),
                ),
                Some((coord, _, v)) => (
                    VerdictStatus::Refuted { lower_bound: v.clone(), from_index: from },
                    format!("coordinate {coord} of z_k equals {v} for k >= {from}"),
                ),
            }
        }
        Deficit::Affine { offset, rate, dir } => {
            let z = meet(offset.clone())?;
            match nonzero_coordinate(&z) {
                None => {
                    let dom = match probe {
                        Some(u) => format!("({rate})*|{dir}| meet {u}"),
                        None => format!("({rate})*|{dir}|"),
                    };
                    (VerdictStatus::ConvergesExact, format!("z_k <= {dom}, decreasing to 0"))
                }
                Some((coord, _, v)) => {
                    // Coordinate j of |offset + r_k dir| tends to |offset_j|.
                    let o = coordinate_of(offset, &coord).abs();
                    let d = coordinate_of(dir, &coord).abs();
                    let half = &v / &Scalar::from_int(2);
                    let from = if d.is_zero() { 1 } else { rate.first_index_below(&d, &(&o / &Scalar::from_int(2))) };
                    (
                        VerdictStatus::Refuted { lower_bound: half.clone(), from_index: from },
                        format!("coordinate {coord} of z_k tends to {v} and stays >= {half} for k >= {from}"),
                    )
                }
            }
        }
        Deficit::Walk { offset } => {
            let static_part = meet(LatticeElement::Seq(offset.clone()))?;
            match nonzero_coordinate(&static_part) {
                Some((coord, i, v)) => (
                    VerdictStatus::Refuted { lower_bound: v.clone(), from_index: i as u64 + 1 },
                    format!("coordinate {coord} of z_k equals {v} for every k != {coord}"),
                ),
                None => match (probe, ambient) {
                    (Some(u), _) => {
                        (VerdictStatus::ConvergesExact, format!("z_k <= {u} restricted to [k, inf), decreasing to 0"))
                    }
                    (None, Ambient::Full) => {
                        (VerdictStatus::ConvergesExact, "z_k <= indicator of [k, inf), decreasing to 0".to_string())
                    }
                    (None, Ambient::C0) => (
                        VerdictStatus::Refuted { lower_bound: Scalar::one(), from_index: 1 },
                        "any y_k >= z_j for all j >= k has entries >= 1 at every j >= k, so y_k is not in c0; \
                         sup norm of z_k is 1"
                            .to_string(),
                    ),
                },
            }
        }
    };
    Ok(decided(label, status, detail, trace))
}

/// `u` restricted to indices `>= k`, the dominating net of a unit walk.
pub fn walk_dominator(u: &SeqElement, k: usize) -> SeqElement {
    u.zero_before(&Index::from(k))
}
