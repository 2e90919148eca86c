//! Riesz pseudonorm combinators.

mod axioms;
mod compare;
mod float;

use std::fmt;

pub use axioms::{
    check_axioms, index_grid, AxiomReport, AxiomStatus, NullSequence, ScalingOutcome, ScalingRow, Witness,
};
pub use compare::{dominates, equals_pointwise, Comparison};

use crate::dualpair::{DualPair, Functional, Pairing};
use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, NormTag, Space};
use crate::scalar::Scalar;

/// A pseudonorm built from the combinator algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PseudonormExpr {
    Norm(NormTag),
    /// `x ↦ p(|x| ∧ u)`.
    Restrict {
        inner: Box<PseudonormExpr>,
        bound: LatticeElement,
    },
    /// `x ↦ max_{a ∈ A} p(|x| ∧ a)` over a finite nonempty `A`.
    UnboundedSup {
        inner: Box<PseudonormExpr>,
        family: Vec<LatticeElement>,
    },
    /// `x ↦ T(|x| ∧ |a|, |y|)`.
    Dual {
        pair: DualPair,
        anchor: LatticeElement,
        functional: Functional,
    },
    /// `x ↦ |f|(|x|)`.
    AbsWeak {
        pair: DualPair,
        functional: Functional,
    },
    /// `x ↦ q(x_j)` on a finite product.
    Project {
        factors: Vec<Space>,
        block: usize,
        inner: Box<PseudonormExpr>,
    },
}

impl PseudonormExpr {
    pub fn norm(tag: NormTag) -> Self {
        PseudonormExpr::Norm(tag)
    }

    pub fn sup() -> Self {
        PseudonormExpr::Norm(NormTag::Sup)
    }

    pub fn restrict(self, bound: LatticeElement) -> Result<Self> {
        bound.require_positive()?;
        self.expect_space(&bound.space())?;
        Ok(PseudonormExpr::Restrict { inner: Box::new(self), bound })
    }

    pub fn unbounded_sup(self, family: Vec<LatticeElement>) -> Result<Self> {
        let first = family.first().ok_or(Error::EmptyFamily)?;
        let space = first.space();
        for a in &family {
            a.require_positive()?;
            space.check(a)?;
        }
        self.expect_space(&space)?;
        Ok(PseudonormExpr::UnboundedSup { inner: Box::new(self), family })
    }

    pub fn dual(pair: DualPair, anchor: LatticeElement, functional: Functional) -> Result<Self> {
        pair.space.check(&anchor)?;
        pair.space.check(functional.element())?;
        Ok(PseudonormExpr::Dual { pair, anchor, functional })
    }

    pub fn abs_weak(pair: DualPair, functional: Functional) -> Result<Self> {
        pair.space.check(functional.element())?;
        Ok(PseudonormExpr::AbsWeak { pair, functional })
    }

    pub fn project(factors: Vec<Space>, block: usize, inner: PseudonormExpr) -> Result<Self> {
        let target = factors.get(block).ok_or_else(|| Error::InvalidArgument(format!("block {block} out of range")))?;
        inner.expect_space(target)?;
        Ok(PseudonormExpr::Project { factors, block, inner: Box::new(inner) })
    }

    /// The carrier fixed by embedded elements; `None` for bare norm atoms.
    pub fn space(&self) -> Option<Space> {
        match self {
            PseudonormExpr::Norm(_) => None,
            PseudonormExpr::Restrict { bound, .. } => Some(bound.space()),
            PseudonormExpr::UnboundedSup { family, .. } => Some(family[0].space()),
            PseudonormExpr::Dual { pair, .. } | PseudonormExpr::AbsWeak { pair, .. } => Some(pair.space.clone()),
            PseudonormExpr::Project { factors, .. } => Some(Space::Product(factors.clone())),
        }
    }

    fn expect_space(&self, space: &Space) -> Result<()> {
        match self.space() {
            Some(own) if &own != space => Err(Error::SpaceMismatch { expected: own, found: space.clone() }),
            _ => Ok(()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PseudonormExpr::Norm(_) | PseudonormExpr::Dual { .. } | PseudonormExpr::AbsWeak { .. } => 1,
            PseudonormExpr::Restrict { inner, .. }
            | PseudonormExpr::UnboundedSup { inner, .. }
            | PseudonormExpr::Project { inner, .. } => 1 + inner.depth(),
        }
    }

    pub fn uses_float_only(&self) -> bool {
        match self {
            PseudonormExpr::Norm(tag) => *tag == NormTag::Euclid,
            PseudonormExpr::Restrict { inner, .. }
            | PseudonormExpr::UnboundedSup { inner, .. }
            | PseudonormExpr::Project { inner, .. } => inner.uses_float_only(),
            PseudonormExpr::Dual { .. } | PseudonormExpr::AbsWeak { .. } => false,
        }
    }

    pub fn evaluate(&self, x: &LatticeElement) -> Result<Scalar> {
        if let Some(space) = self.space() {
            space.check(x)?;
        }
        self.eval(x)
    }

    fn eval(&self, x: &LatticeElement) -> Result<Scalar> {
        match self {
            PseudonormExpr::Norm(tag) => x.norm(*tag),
            PseudonormExpr::Restrict { inner, bound } => inner.eval(&x.abs()?.meet(bound)?),
            PseudonormExpr::UnboundedSup { inner, family } => {
                let ax = x.abs()?;
                let mut best = Scalar::zero();
                for a in family {
                    best = best.max_of(inner.eval(&ax.meet(a)?)?);
                }
                Ok(best)
            }
            PseudonormExpr::Dual { pair, anchor, functional } => {
                let m = x.abs()?.meet(&anchor.abs()?)?;
                pair.apply(&m, &functional.abs())
            }
            PseudonormExpr::AbsWeak { pair, functional } => pair.apply(&x.abs()?, &functional.abs()),
            PseudonormExpr::Project { block, inner, .. } => inner.eval(x.block(*block)?),
        }
    }

    /// A constant `C` with `p(λx) <= |λ|·C` for every `|λ| <= 1`.
    pub fn scaling_bound(&self, x: &LatticeElement) -> Result<Scalar> {
        match self {
            PseudonormExpr::Norm(tag) => x.norm(*tag),
            PseudonormExpr::Restrict { inner, bound } => inner.scaling_bound(&x.abs()?.restrict_to_support_of(bound)?),
            PseudonormExpr::UnboundedSup { inner, family } => {
                let ax = x.abs()?;
                let mut best = Scalar::zero();
                for a in family {
                    best = best.max_of(inner.scaling_bound(&ax.restrict_to_support_of(a)?)?);
                }
                Ok(best)
            }
            PseudonormExpr::Dual { pair, functional, .. } | PseudonormExpr::AbsWeak { pair, functional } => {
                pair.apply(&x.abs()?, &functional.abs())
            }
            PseudonormExpr::Project { block, inner, .. } => inner.scaling_bound(x.block(*block)?),
        }
    }

    /// The same tree with Euclidean atoms replaced by the smaller sup norm;
    /// a pointwise exact lower bound.
    pub fn exact_minorant(&self) -> PseudonormExpr {
        match self {
            PseudonormExpr::Norm(NormTag::Euclid) => PseudonormExpr::Norm(NormTag::Sup),
            PseudonormExpr::Norm(_) | PseudonormExpr::Dual { .. } | PseudonormExpr::AbsWeak { .. } => self.clone(),
            PseudonormExpr::Restrict { inner, bound } => {
                PseudonormExpr::Restrict { inner: Box::new(inner.exact_minorant()), bound: bound.clone() }
            }
            PseudonormExpr::UnboundedSup { inner, family } => {
                PseudonormExpr::UnboundedSup { inner: Box::new(inner.exact_minorant()), family: family.clone() }
            }
            PseudonormExpr::Project { factors, block, inner } => PseudonormExpr::Project {
                factors: factors.clone(),
                block: *block,
                inner: Box::new(inner.exact_minorant()),
            },
        }
    }

    /// Evaluate on a float coordinate vector; supports the Euclidean norm.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<f64> {
        float::evaluate(self, x)
    }
}

impl fmt::Display for PseudonormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudonormExpr::Norm(tag) => write!(f, "norm({tag})"),
            PseudonormExpr::Restrict { inner, bound } => write!(f, "restrict({inner}, {bound})"),
            PseudonormExpr::UnboundedSup { inner, family } => {
                write!(f, "usup({inner}, [")?;
                for (i, a) in family.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "])")
            }
            PseudonormExpr::Dual { pair, anchor, functional } => {
                write!(f, "dual(a={anchor}, y={functional}")?;
                if pair.pairing == Pairing::Zero {
                    write!(f, ", T=zero")?;
                }
                write!(f, ")")
            }
            PseudonormExpr::AbsWeak { pair, functional } => {
                write!(f, "absw({functional}")?;
                if pair.pairing == Pairing::Zero {
                    write!(f, ", T=zero")?;
                }
                write!(f, ")")
            }
            PseudonormExpr::Project { block, inner, .. } => write!(f, "proj({block}, {inner})"),
        }
    }
}

/// Any map `E → ℚ` that can be put through the axiom checker.
pub trait RieszMap: Sync {
    fn eval(&self, x: &LatticeElement) -> Result<Scalar>;

    /// See [`PseudonormExpr::scaling_bound`]; `None` when no bound is known.
    fn scaling_bound(&self, _x: &LatticeElement) -> Result<Option<Scalar>> {
        Ok(None)
    }

    fn describe(&self) -> String;
}

impl RieszMap for PseudonormExpr {
    fn eval(&self, x: &LatticeElement) -> Result<Scalar> {
        self.evaluate(x)
    }

    fn scaling_bound(&self, x: &LatticeElement) -> Result<Option<Scalar>> {
        PseudonormExpr::scaling_bound(self, x).map(Some)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// An arbitrary map, used for negative controls.
pub struct FnMap<F> {
    name: String,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&LatticeElement) -> Result<Scalar> + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnMap { name: name.into(), f }
    }
}

impl<F> RieszMap for FnMap<F>
where
    F: Fn(&LatticeElement) -> Result<Scalar> + Sync,
{
    fn eval(&self, x: &LatticeElement) -> Result<Scalar> {
        (self.f)(x)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// `x ↦ m(|x| ∧ u)` for an arbitrary map `m`.
pub struct Restricted<'a, M: ?Sized> {
    inner: &'a M,
    bound: LatticeElement,
}

impl<'a, M: RieszMap + ?Sized> Restricted<'a, M> {
    pub fn new(inner: &'a M, bound: LatticeElement) -> Result<Self> {
        bound.require_positive()?;
        Ok(Restricted { inner, bound })
    }
}

impl<M: RieszMap + ?Sized> RieszMap for Restricted<'_, M> {
    fn eval(&self, x: &LatticeElement) -> Result<Scalar> {
        self.inner.eval(&x.abs()?.meet(&self.bound)?)
    }

    fn describe(&self) -> String {
        format!("restrict({}, {})", self.inner.describe(), self.bound)
    }
}
