use super::spec::{CollectionSpec, Provenance, Sufficiency, TopologySpec};
use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, Space};
use crate::pseudonorm::PseudonormExpr;
use crate::scalar::Scalar;

/// `u<τ,𝒜>`: the family `usup(p_i, A)` over members `p_i` and sets `A ∈ 𝒜`.
pub fn unbounded_topology(tau: &TopologySpec, collection: &CollectionSpec) -> Result<TopologySpec> {
    let space = collection.space();
    let tau = tau.clone().with_space(space)?;
    let mut members = Vec::with_capacity(tau.members().len() * collection.sets().len());
    for p in tau.members() {
        for set in collection.sets() {
            members.push(p.clone().unbounded_sup(set.clone())?);
        }
    }
    let space = tau.space().cloned();
    let mut out = TopologySpec::with_provenance(
        members,
        Provenance::Unbounded { parent: Box::new(tau), collection: collection.clone() },
    )?;
    if let Some(s) = space {
        out = out.with_space(s)?;
    }
    Ok(out)
}

/// `τ′` over a probe set: the singleton restrictions `restrict(p_i, u)`.
pub fn tau_prime(tau: &TopologySpec, probes: &[LatticeElement]) -> Result<TopologySpec> {
    let first = probes.first().ok_or_else(|| Error::InvalidArgument("empty probe set".into()))?;
    let space = first.space();
    for u in probes {
        space.check(u)?;
        u.require_positive()?;
    }
    if probes.iter().all(LatticeElement::is_zero) {
        return Err(Error::InvalidArgument("zero probes give the indiscrete topology (every member vanishes)".into()));
    }
    let tau = tau.clone().with_space(space.clone())?;
    let mut members = Vec::with_capacity(tau.members().len() * probes.len());
    for p in tau.members() {
        for u in probes {
            members.push(p.clone().restrict(u.clone())?);
        }
    }
    let sufficiency = sufficiency(probes)?;
    TopologySpec::with_provenance(
        members,
        Provenance::TauPrime { parent: Box::new(tau), probes: probes.to_vec(), sufficiency },
    )?
    .with_space(space)
}

fn sufficiency(probes: &[LatticeElement]) -> Result<Sufficiency> {
    for u in probes {
        if u.is_strong_unit()? {
            return Ok(Sufficiency::StrongUnit);
        }
    }
    for u in probes {
        if matches!(u, LatticeElement::Seq(_)) && u.is_quasi_interior()? {
            return Ok(Sufficiency::QuasiInteriorC0);
        }
    }
    Ok(Sufficiency::Unknown)
}

/// Product of finitely many topologies: member `q` of component `j` becomes
/// `q ∘ P_j`.
pub fn product_topology(components: &[TopologySpec]) -> Result<TopologySpec> {
    if components.is_empty() {
        return Err(Error::InvalidArgument("a product needs at least one component".into()));
    }
    let factors: Vec<Space> = components
        .iter()
        .map(|c| c.space().cloned().ok_or_else(|| Error::InvalidArgument(format!("component {c} needs a fixed space"))))
        .collect::<Result<_>>()?;
    let mut members = Vec::new();
    for (j, c) in components.iter().enumerate() {
        for q in c.members() {
            members.push(PseudonormExpr::project(factors.clone(), j, q.clone())?);
        }
    }
    TopologySpec::with_provenance(members, Provenance::Product { components: components.to_vec() })?
        .with_space(Space::Product(factors))
}

/// `∏𝒜_i`: for every choice `A_i ∈ 𝒜_i`, the set of all tuples `(a_i)`.
pub fn product_collection(collections: &[CollectionSpec]) -> Result<CollectionSpec> {
    if collections.is_empty() {
        return Err(Error::InvalidArgument("a product needs at least one collection".into()));
    }
    let mut choices: Vec<Vec<&Vec<LatticeElement>>> = vec![vec![]];
    for c in collections {
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                c.sets().iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    let sets = choices
        .into_iter()
        .map(|choice| {
            let mut tuples: Vec<Vec<LatticeElement>> = vec![vec![]];
            for set in choice {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        set.iter().map(move |a| {
                            let mut next = t.clone();
                            next.push(a.clone());
                            next
                        })
                    })
                    .collect();
            }
            tuples.into_iter().map(LatticeElement::Product).collect()
        })
        .collect();
    CollectionSpec::new(sets)
}

/// A member of `u<τ,{{|x|}}>` that is positive at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HausdorffWitness {
    pub index: usize,
    pub pseudonorm: PseudonormExpr,
    pub value: Scalar,
}

/// Separate a nonzero `x` from zero by `usup(p_i, {|x|})`.
pub fn hausdorff_witness(tau: &TopologySpec, x: &LatticeElement) -> Result<HausdorffWitness> {
    tau.check(x)?;
    if x.is_zero() {
        return Err(Error::InvalidArgument("x = 0 cannot be separated from 0".into()));
    }
    let ax = x.abs()?;
    for (index, p) in tau.members().iter().enumerate() {
        let q = p.clone().unbounded_sup(vec![ax.clone()])?;
        let value = q.evaluate(x)?;
        if value.is_positive() {
            return Ok(HausdorffWitness { index, pseudonorm: q, value });
        }
    }
    Err(Error::NotSeparated(format!("{x} under {tau}")))
}
