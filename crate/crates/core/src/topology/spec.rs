use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, Space};
use crate::pseudonorm::PseudonormExpr;

/// A nonempty finite collection of nonempty finite sets of positive elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollectionSpec {
    sets: Vec<Vec<LatticeElement>>,
}

impl CollectionSpec {
    pub fn new(sets: Vec<Vec<LatticeElement>>) -> Result<Self> {
        let space = sets.first().and_then(|s| s.first()).map(LatticeElement::space).ok_or(Error::EmptyFamily)?;
        for set in &sets {
            if set.is_empty() {
                return Err(Error::EmptyFamily);
            }
            for a in set {
                space.check(a)?;
                a.require_positive()?;
            }
        }
        Ok(CollectionSpec { sets })
    }

    /// `{{a} : a ∈ ⋃𝒜}`, in order of first appearance.
    pub fn singletons(&self) -> CollectionSpec {
        let mut seen: Vec<&LatticeElement> = Vec::new();
        for a in self.sets.iter().flatten() {
            if !seen.contains(&a) {
                seen.push(a);
            }
        }
        CollectionSpec { sets: seen.into_iter().map(|a| vec![a.clone()]).collect() }
    }

    pub fn sets(&self) -> &[Vec<LatticeElement>] {
        &self.sets
    }

    pub fn space(&self) -> Space {
        self.sets[0][0].space()
    }

    /// Whether every set of `self` is a set of `other`.
    pub fn is_subcollection_of(&self, other: &CollectionSpec) -> bool {
        self.sets.iter().all(|s| other.sets.iter().any(|t| same_set(s, t)))
    }
}

fn same_set(a: &[LatticeElement], b: &[LatticeElement]) -> bool {
    a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
}

impl fmt::Display for CollectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, set) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", list(set))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn list(items: &[LatticeElement]) -> String {
    let parts: Vec<String> = items.iter().map(LatticeElement::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// How far a probe set is known to generate the whole unbounded topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sufficiency {
    /// A probe is a strong unit: τ′-convergence is τ-convergence.
    StrongUnit,
    /// A probe is quasi-interior: sufficient on the c₀ part.
    QuasiInteriorC0,
    Unknown,
}

impl fmt::Display for Sufficiency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sufficiency::StrongUnit => "sufficient (strong unit)",
            Sufficiency::QuasiInteriorC0 => "sufficient for c0 elements (quasi-interior)",
            Sufficiency::Unknown => "not known to be sufficient",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Base,
    Unbounded {
        parent: Box<TopologySpec>,
        collection: CollectionSpec,
    },
    TauPrime {
        parent: Box<TopologySpec>,
        probes: Vec<LatticeElement>,
        sufficiency: Sufficiency,
    },
    Product {
        components: Vec<TopologySpec>,
    },
    /// Built elsewhere, e.g. from a dual pair; the label is its literal.
    Derived {
        label: String,
    },
}

/// A topology given by a finite generating family of pseudonorms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TopologySpec {
    space: Option<Space>,
    members: Vec<PseudonormExpr>,
    provenance: Provenance,
}

impl TopologySpec {
    pub fn base(members: Vec<PseudonormExpr>) -> Result<Self> {
        Self::with_provenance(members, Provenance::Base)
    }

    pub(crate) fn with_provenance(members: Vec<PseudonormExpr>, provenance: Provenance) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("a topology needs at least one pseudonorm".into()));
        }
        let mut space: Option<Space> = None;
        for m in &members {
            if let Some(s) = m.space() {
                match &space {
                    Some(t) if t != &s => return Err(Error::SpaceMismatch { expected: t.clone(), found: s }),
                    _ => space = Some(s),
                }
            }
        }
        Ok(TopologySpec { space, members, provenance })
    }

    pub fn derived(members: Vec<PseudonormExpr>, label: impl Into<String>) -> Result<Self> {
        Self::with_provenance(members, Provenance::Derived { label: label.into() })
    }

    /// Fix the carrier of a family of bare norm atoms.
    pub fn with_space(mut self, space: Space) -> Result<Self> {
        match &self.space {
            Some(s) if s != &space => Err(Error::SpaceMismatch { expected: s.clone(), found: space }),
            _ => {
                self.space = Some(space);
                Ok(self)
            }
        }
    }

    pub fn space(&self) -> Option<&Space> {
        self.space.as_ref()
    }

    pub fn members(&self) -> &[PseudonormExpr] {
        &self.members
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn check(&self, x: &LatticeElement) -> Result<()> {
        match &self.space {
            Some(s) => s.check(x),
            None => Ok(()),
        }
    }

    /// Whether every member is a float-only construct somewhere.
    pub fn uses_float_only(&self) -> bool {
        self.members.iter().any(PseudonormExpr::uses_float_only)
    }

    pub fn sufficiency(&self) -> Option<Sufficiency> {
        match &self.provenance {
            Provenance::TauPrime { sufficiency, .. } => Some(*sufficiency),
            _ => None,
        }
    }
}

impl TopologySpec {
    /// `space=` is printed for a base family only when no member fixes it and
    /// the enclosing literal does not either.
    fn write(&self, f: &mut fmt::Formatter<'_>, space_implied: bool) -> fmt::Result {
        match &self.provenance {
            Provenance::Base => {
                let parts: Vec<String> = self.members.iter().map(PseudonormExpr::to_string).collect();
                write!(f, "tau({}", parts.join(", "))?;
                match &self.space {
                    Some(s) if !space_implied && self.members.iter().all(|m| m.space().is_none()) => {
                        write!(f, ", space={s})")
                    }
                    _ => write!(f, ")"),
                }
            }
            Provenance::Unbounded { parent, collection } => {
                write!(f, "u(")?;
                parent.write(f, true)?;
                write!(f, ", AA={collection})")
            }
            Provenance::TauPrime { parent, probes, .. } => {
                write!(f, "tauprime(")?;
                parent.write(f, true)?;
                write!(f, ", probes={})", list(probes))
            }
            Provenance::Product { components } => {
                let parts: Vec<String> = components.iter().map(TopologySpec::to_string).collect();
                write!(f, "prod({})", parts.join(", "))
            }
            Provenance::Derived { label } => f.write_str(label),
        }
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}
