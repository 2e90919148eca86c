//! Seeded random rationals, elements and pseudonorm expressions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dualpair::{DualPair, Functional};
use crate::lattice::{Harmonic, LatticeElement, NormTag, SeqElement, Space};
use crate::pseudonorm::PseudonormExpr;
use crate::scalar::Scalar;

/// Node kinds an expression sampler can emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Norm,
    Restrict,
    UnboundedSup,
    Dual,
    AbsWeak,
}

impl NodeKind {
    pub const ALL: [NodeKind; 5] =
        [NodeKind::Norm, NodeKind::Restrict, NodeKind::UnboundedSup, NodeKind::Dual, NodeKind::AbsWeak];
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// A rational `p/q` with `|p| <= 6`, `1 <= q <= 4`.
    pub fn scalar(&mut self) -> Scalar {
        let p = self.rng.random_range(-6i64..=6);
        let q = self.rng.random_range(1i64..=4);
        Scalar::ratio(p, q)
    }

    pub fn positive_scalar(&mut self) -> Scalar {
        let p = self.rng.random_range(1i64..=6);
        let q = self.rng.random_range(1i64..=4);
        Scalar::ratio(p, q)
    }

    pub fn element(&mut self, space: &Space) -> LatticeElement {
        match space {
            Space::Coord(n) => LatticeElement::coord((0..*n).map(|_| self.scalar()).collect()),
            Space::Seq => LatticeElement::Seq(self.seq()),
            Space::Product(blocks) => LatticeElement::Product(blocks.iter().map(|b| self.element(b)).collect()),
        }
    }

    fn seq(&mut self) -> SeqElement {
        let len = self.rng.random_range(0..=4);
        let prefix = (0..len).map(|_| self.scalar()).collect();
        let d = if self.coin(0.5) { Scalar::zero() } else { self.scalar() };
        let c = if self.coin(0.3) { Scalar::zero() } else { self.scalar() };
        SeqElement::new(prefix, Harmonic::new(d, c))
    }

    pub fn nonzero_element(&mut self, space: &Space) -> LatticeElement {
        loop {
            let x = self.element(space);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn positive_element(&mut self, space: &Space) -> LatticeElement {
        self.element(space).abs().expect("sampled tails have small crossovers")
    }

    /// A positive element with zero tail on sequence blocks.
    pub fn finite_positive_element(&mut self, space: &Space) -> LatticeElement {
        match space {
            Space::Seq => {
                let len = self.rng.random_range(1..=4);
                LatticeElement::Seq(SeqElement::finite((0..len).map(|_| self.scalar().abs()).collect()))
            }
            Space::Product(blocks) => {
                LatticeElement::Product(blocks.iter().map(|b| self.finite_positive_element(b)).collect())
            }
            _ => self.positive_element(space),
        }
    }

    pub fn elements(&mut self, space: &Space, n: usize) -> Vec<LatticeElement> {
        (0..n).map(|_| self.element(space)).collect()
    }

    pub fn functional(&mut self, space: &Space) -> Functional {
        let e = match space {
            Space::Seq => {
                let len = self.rng.random_range(1..=4);
                LatticeElement::Seq(SeqElement::finite((0..len).map(|_| self.scalar()).collect()))
            }
            _ => self.element(space),
        };
        Functional::new(e).expect("sampled functionals are finitely supported")
    }

    /// A random expression of depth at most `depth` over a coordinate or
    /// sequence space.
    pub fn expr(&mut self, space: &Space, depth: usize) -> PseudonormExpr {
        self.expr_in(space, depth.max(1), false)
    }

    /// A random expression whose root has the given kind.
    pub fn expr_of_kind(&mut self, space: &Space, kind: NodeKind, depth: usize) -> PseudonormExpr {
        self.node(space, kind, depth.max(1), false)
    }

    fn expr_in(&mut self, space: &Space, depth: usize, finite_ctx: bool) -> PseudonormExpr {
        let kinds: &[NodeKind] =
            if depth <= 1 { &[NodeKind::Norm, NodeKind::Dual, NodeKind::AbsWeak] } else { &NodeKind::ALL };
        let kind = kinds[self.index(kinds.len())];
        self.node(space, kind, depth, finite_ctx)
    }

    /// `finite_ctx` marks that the argument has already been met with a
    /// finitely supported bound, so an l1 atom is total there.
    fn node(&mut self, space: &Space, kind: NodeKind, depth: usize, finite_ctx: bool) -> PseudonormExpr {
        let depth = if matches!(kind, NodeKind::Restrict | NodeKind::UnboundedSup) { depth.max(2) } else { depth };
        match kind {
            NodeKind::Norm => {
                let l1_ok = finite_ctx || !matches!(space, Space::Seq);
                if l1_ok && self.coin(0.5) {
                    PseudonormExpr::norm(NormTag::L1)
                } else {
                    PseudonormExpr::sup()
                }
            }
            NodeKind::Restrict => {
                let (u, finite) = self.bound(space);
                let inner = self.expr_in(space, depth - 1, finite_ctx || finite);
                inner.restrict(u).expect("sampled bound is positive and in space")
            }
            NodeKind::UnboundedSup => {
                let n = self.rng.random_range(1..=3);
                let mut family = Vec::with_capacity(n);
                let mut all_finite = true;
                for _ in 0..n {
                    let (a, finite) = self.bound(space);
                    all_finite &= finite;
                    family.push(a);
                }
                let inner = self.expr_in(space, depth - 1, finite_ctx || all_finite);
                inner.unbounded_sup(family).expect("sampled family is positive and in space")
            }
            NodeKind::Dual => {
                let anchor = self.element(space);
                let y = self.functional(space);
                PseudonormExpr::dual(DualPair::standard(space.clone()), anchor, y).expect("same space")
            }
            NodeKind::AbsWeak => {
                let f = self.functional(space);
                PseudonormExpr::abs_weak(DualPair::standard(space.clone()), f).expect("same space")
            }
        }
    }

    fn bound(&mut self, space: &Space) -> (LatticeElement, bool) {
        if matches!(space, Space::Seq) && self.coin(0.4) {
            (self.finite_positive_element(space), true)
        } else {
            let u = self.positive_element(space);
            let finite = u.is_finitely_supported();
            (u, finite)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let space = Space::Seq;
        let a: Vec<_> = {
            let mut s = Sampler::new(7);
            s.elements(&space, 20)
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(7);
            s.elements(&space, 20)
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_expressions_evaluate() {
        let mut s = Sampler::new(3);
        for space in [Space::Coord(5), Space::Seq] {
            for _ in 0..200 {
                let p = s.expr(&space, 3);
                assert!(p.depth() <= 3);
                let x = s.element(&space);
                let v = p.evaluate(&x).unwrap_or_else(|e| panic!("{p} at {x}: {e}"));
                assert!(!v.is_negative());
            }
        }
    }
}
