use std::fmt;
use std::str::FromStr;

use super::pairing::{DualPair, Functional};
use crate::convergence::{converges_to, NetSpec, Policy};
use crate::error::{Error, Result};
use crate::lattice::{ideal_member, IdealCertificate, LatticeElement, Space};
use crate::pseudonorm::{index_grid, PseudonormExpr};
use crate::report::{Row, Status};
use crate::scalar::Scalar;
use crate::topology::{CollectionSpec, TopologySpec};

/// Verify bilinearity, positivity and separation of `pair` on `samples`.
///
/// Functionals are the unit functionals of the samples' supports together
/// with the finitely supported samples themselves.
pub fn check_positive_dual_pair(pair: &DualPair, samples: &[LatticeElement]) -> Result<Vec<Row>> {
    for x in samples {
        pair.space.check(x)?;
    }
    let mut functionals: Vec<Functional> = Vec::new();
    for x in samples {
        if x.is_finitely_supported() {
            functionals.push(Functional::new(x.clone())?);
        }
        if let Some(w) = unit_at_support(&pair.space, x)? {
            functionals.push(w);
        }
    }
    if functionals.is_empty() {
        functionals.push(unit_functional(&pair.space, None, 1)?);
    }
    let subject = pair.to_string();
    let mut rows = Vec::new();

    let (alpha, beta) = (Scalar::ratio(3, 2), Scalar::from_int(-2));
    let mut bilinear_ok = true;
    let mut positive_ok = true;
    for (i, x) in samples.iter().enumerate() {
        let z = &samples[(i + 1) % samples.len()];
        let combo = x.scale(&alpha).add(&z.scale(&beta))?;
        for (j, y) in functionals.iter().enumerate() {
            let lhs = pair.apply(&combo, y)?;
            let rhs = &(&alpha * &pair.apply(x, y)?) + &(&beta * &pair.apply(z, y)?);
            let w = &functionals[(j + 1) % functionals.len()];
            let yw = Functional::new(y.element().scale(&alpha).add(&w.element().scale(&beta))?)?;
            let lhs2 = pair.apply(x, &yw)?;
            let rhs2 = &(&alpha * &pair.apply(x, y)?) + &(&beta * &pair.apply(x, w)?);
            bilinear_ok &= lhs == rhs && lhs2 == rhs2;
            positive_ok &= !pair.apply(&x.abs()?, &y.abs())?.is_negative();
        }
    }
    rows.push(Row::invariant(
        &subject,
        "bilinearity",
        format!("{} x {} checks", samples.len(), functionals.len()),
        bilinear_ok,
    ));
    rows.push(Row::invariant(&subject, "positivity on positive pairs", "T(|x|,|y|) >= 0", positive_ok));

    for x in samples.iter().filter(|x| !x.is_zero()) {
        let w = unit_at_support(&pair.space, x)?.expect("nonzero element has a support index");
        let t = pair.apply(x, &w)?;
        rows.push(Row::invariant(
            format!("{subject}, x = {x}"),
            "separation",
            format!("y = {w}, T(x,y) = {t}"),
            !t.is_zero(),
        ));
    }
    Ok(rows)
}

fn unit_functional(space: &Space, block: Option<usize>, index: usize) -> Result<Functional> {
    match (space, block) {
        (Space::Product(factors), Some(j)) => {
            let blocks =
                factors
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        if i == j {
                            unit_functional(s, None, index).map(|f| f.element().clone())
                        } else {
                            Ok(s.zero())
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
            Functional::new(LatticeElement::Product(blocks))
        }
        (Space::Product(_), None) => unit_functional(space, Some(0), index),
        _ => Functional::unit(space, index),
    }
}

/// The unit functional at the first index where `x` is nonzero.
fn unit_at_support(space: &Space, x: &LatticeElement) -> Result<Option<Functional>> {
    match x {
        LatticeElement::Coord(v) => match v.coords().iter().position(|s| !s.is_zero()) {
            Some(i) => Ok(Some(unit_functional(space, None, i + 1)?)),
            None => Ok(None),
        },
        LatticeElement::Seq(s) => match s.first_nonzero_index() {
            Some(i) => Ok(Some(unit_functional(space, None, i)?)),
            None => Ok(None),
        },
        LatticeElement::Product(blocks) => {
            let Space::Product(factors) = space else {
                return Err(Error::SpaceMismatch { expected: space.clone(), found: x.space() });
            };
            for (j, (b, s)) in blocks.iter().zip(factors).enumerate() {
                if let Some(w) = unit_at_support(s, b)? {
                    let mut parts: Vec<LatticeElement> = factors.iter().map(Space::zero).collect();
                    parts[j] = w.element().clone();
                    return Ok(Some(Functional::new(LatticeElement::Product(parts))?));
                }
            }
            Ok(None)
        }
    }
}

/// `x ↦ T(|x| ∧ |a|, |y|)`.
pub fn dual_pseudonorm(pair: &DualPair, a: &LatticeElement, y: &Functional) -> Result<PseudonormExpr> {
    PseudonormExpr::dual(pair.clone(), a.clone(), y.clone())
}

/// `|σ|(E, F₀)`: the family `x ↦ |f|(|x|)` for `f ∈ F₀`.
pub fn absolute_weak_topology(pair: &DualPair, functionals: &[Functional]) -> Result<TopologySpec> {
    if functionals.is_empty() {
        return Err(Error::InvalidArgument("absolute weak topology needs a functional".into()));
    }
    let members =
        functionals.iter().map(|f| PseudonormExpr::abs_weak(pair.clone(), f.clone())).collect::<Result<Vec<_>>>()?;
    TopologySpec::derived(members, format!("absweak({pair}, F0={})", list_of(functionals)))?
        .with_space(pair.space.clone())
}

fn list_of<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Reading of the unbounded absolute weak family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interpretation {
    /// `T(|x| ∧ |e₀|, |f₀|)`; the bound variable `a` does not occur.
    AsWritten,
    /// `max_{a ∈ A} T(|x| ∧ a ∧ |e₀|, |f₀|)`.
    MeetWithA,
}

impl Interpretation {
    pub const BOTH: [Interpretation; 2] = [Interpretation::AsWritten, Interpretation::MeetWithA];
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::AsWritten => "as-written",
            Interpretation::MeetWithA => "meet-a",
        })
    }
}

impl FromStr for Interpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-written" => Ok(Interpretation::AsWritten),
            "meet-a" | "meet-with-a" => Ok(Interpretation::MeetWithA),
            _ => Err(Error::InvalidArgument(format!("unknown interpretation {s:?}"))),
        }
    }
}

/// The unbounded absolute weak family over `A ∈ 𝒜`, `e₀ ∈ E₀`, `f₀ ∈ F₀`.
///
/// Under [`Interpretation::AsWritten`] members that coincide for different
/// `A` are listed once.
pub fn uaw_topology(
    pair: &DualPair,
    e0: &[LatticeElement],
    f0: &[Functional],
    collection: &CollectionSpec,
    interp: Interpretation,
) -> Result<TopologySpec> {
    if e0.is_empty() || f0.is_empty() {
        return Err(Error::InvalidArgument("E0 and F0 must be nonempty".into()));
    }
    let mut members = Vec::new();
    for e in e0 {
        for f in f0 {
            let atom = dual_pseudonorm(pair, e, f)?;
            match interp {
                Interpretation::AsWritten => members.push(atom),
                Interpretation::MeetWithA => {
                    for set in collection.sets() {
                        members.push(atom.clone().unbounded_sup(set.clone())?);
                    }
                }
            }
        }
    }
    let label = format!("uaw({pair}, E0={}, F0={}, AA={collection}, interp={interp})", list_of(e0), list_of(f0));
    TopologySpec::derived(members, label)?.with_space(pair.space.clone())
}

/// Sampled check that `E₀`, `F₀` may be replaced by members of the ideals
/// they generate.
///
/// For every sampled `b ∈ I(E₀)` and `g ∈ I(F₀)` the rows record the ideal
/// certificate, the linear bound on member values along each net, and
/// agreement of convergence verdicts between the original family and the
/// family enlarged by the sample.
#[allow(clippy::too_many_arguments)]
pub fn ideal_invariance_check(
    pair: &DualPair,
    e0: &[LatticeElement],
    f0: &[Functional],
    collection: &CollectionSpec,
    e_samples: &[LatticeElement],
    f_samples: &[Functional],
    nets: &[(NetSpec, LatticeElement)],
    interp: Interpretation,
    policy: &Policy,
) -> Result<Vec<Row>> {
    let base = uaw_topology(pair, e0, f0, collection, interp)?;
    let base_verdicts =
        nets.iter().map(|(net, limit)| converges_to(net, limit, &base, policy)).collect::<Result<Vec<_>>>()?;
    let f0_elems: Vec<LatticeElement> = f0.iter().map(|f| f.element().clone()).collect();
    let mut rows = Vec::new();

    let samples =
        e_samples.iter().map(|b| (b.clone(), true)).chain(f_samples.iter().map(|g| (g.element().clone(), false)));
    for (b, primal) in samples {
        let side = if primal { "E0" } else { "F0" };
        let subject = format!("{side} sample {b}, interp={interp}");
        let cert = ideal_member(&b, if primal { e0 } else { &f0_elems })?;
        let IdealCertificate::Member { constant, .. } = &cert else {
            rows.push(Row::new(subject, "ideal membership", "member", cert.to_string(), Status::Refusal));
            continue;
        };
        let verified = cert.verify(&b)?;
        rows.push(Row::invariant(
            &subject,
            "ideal certificate",
            format!("K = {constant}, verified = {verified}"),
            verified,
        ));

        // Meets with |b| are only sublinear in b, so the primal factor is ⌈max(K,1)⌉.
        let factor = if primal {
            Scalar::from_big(constant.clone().max_of(Scalar::one()).ceil(), 1.into())
        } else {
            constant.clone()
        };
        let (e1, f1) =
            if primal { (vec![b.abs()?], f0.to_vec()) } else { (e0.to_vec(), vec![Functional::new(b.abs()?)?]) };
        let sampled = uaw_topology(pair, &e1, &f1, collection, interp)?;
        let mut enlarged_e = e0.to_vec();
        let mut enlarged_f = f0.to_vec();
        if primal {
            enlarged_e.extend(e1.iter().cloned());
        } else {
            enlarged_f.extend(f1.iter().cloned());
        }
        let enlarged = uaw_topology(pair, &enlarged_e, &enlarged_f, collection, interp)?;

        for ((net, limit), before) in nets.iter().zip(&base_verdicts) {
            let net_subject = format!("{subject}, net {net} -> {limit}");
            let per_atom = if interp == Interpretation::MeetWithA { collection.sets().len() } else { 1 };
            let bound_ok = bound_holds(&sampled, &base, per_atom, &factor, net, limit, policy.horizon)?;
            rows.push(Row::invariant(
                &net_subject,
                "linear bound on sampled members",
                format!("q_b(x_k - x) <= {factor} * sum q(x_k - x): {}", if bound_ok { "holds" } else { "violated" }),
                bound_ok,
            ));
            let after = converges_to(net, limit, &enlarged, policy)?;
            rows.push(Row::invariant(
                net_subject,
                "verdict invariant under ideal enlargement",
                format!("original: {}; enlarged: {}", before.status, after.status),
                before.converges() == after.converges(),
            ));
        }
    }
    Ok(rows)
}

/// Each member of `sampled` is at most `factor` times the sum of the members
/// of `base` built from the same set `A`, along the net.
fn bound_holds(
    sampled: &TopologySpec,
    base: &TopologySpec,
    per_atom: usize,
    factor: &Scalar,
    net: &NetSpec,
    limit: &LatticeElement,
    horizon: u64,
) -> Result<bool> {
    for k in index_grid(horizon.min(256)) {
        let x = net.value_at(k)?.sub(limit)?;
        for (i, q) in sampled.members().iter().enumerate() {
            let mut rhs = Scalar::zero();
            for (j, p) in base.members().iter().enumerate() {
                if j % per_atom == i % per_atom {
                    rhs = &rhs + &p.evaluate(&x)?;
                }
            }
            if q.evaluate(&x)? > factor * &rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
