//! Closed-form evaluation of `q(w + e_k)` for large `k`.
//!
//! Beyond a finite index, `w + e_k` agrees with `w` everywhere except at
//! coordinate `k`, where it takes an affine-harmonic value in `k`. Every
//! combinator maps such a "moving" element to another one, and every atom
//! maps it to an affine-harmonic function of `k`.

use num_traits::ToPrimitive;

use crate::dualpair::Pairing;
use crate::error::{Error, Result};
use crate::lattice::{Harmonic, Index, LatticeElement, NormTag, SeqElement};
use crate::pseudonorm::PseudonormExpr;
use crate::scalar::Scalar;

/// Equal to `base` except at index `k`, where the entry is `at(k)`; valid
/// for every `k >= from`.
#[derive(Clone, Debug)]
struct Moving {
    base: SeqElement,
    at: Harmonic,
    from: Index,
}

impl Moving {
    fn normalize(mut self) -> Self {
        // Past the base prefix, and one further so that dropping coordinate
        // k never changes a supremum attained at the first tail index.
        self.from = self.from.max(self.base.tail_start() + 1u8);
        self
    }

    fn abs(&self) -> Result<Moving> {
        let (at, n) = self.at.eventual_abs();
        Ok(Moving { base: self.base.abs()?, at, from: self.from.clone().max(n + 1u8) }.normalize())
    }

    fn meet(&self, u: &SeqElement) -> Result<Moving> {
        let n = self.at.crossover(u.tail());
        Ok(Moving {
            base: self.base.meet(u)?,
            at: self.at.eventual_min(u.tail()),
            from: self.from.clone().max(n + 1u8).max(u.tail_start().clone()),
        }
        .normalize())
    }
}

/// Closed form `(V, n)` with `q(offset + e_k) = V(k)` for every `k >= n`.
pub(crate) fn walk_value(q: &PseudonormExpr, offset: &SeqElement) -> Result<(Harmonic, u64)> {
    let start = Moving {
        base: offset.clone(),
        at: offset.tail().add(&Harmonic::constant(Scalar::one())),
        from: offset.tail_start().clone(),
    }
    .normalize();
    let (v, n) = eval(q, &start)?;
    let n = n.to_u64().ok_or_else(|| Error::Unsupported(format!("closed form of {q} starts beyond index 2^64")))?;
    Ok((v, n))
}

fn max_harmonic(a: (Harmonic, Index), b: (Harmonic, Index)) -> Result<(Harmonic, Index)> {
    let n = a.0.crossover(&b.0);
    Ok((a.0.eventual_max(&b.0), a.1.max(b.1).max(n + 1u8)))
}

fn seq(e: &LatticeElement) -> Result<&SeqElement> {
    e.as_seq().ok_or_else(|| Error::InvalidArgument(format!("{e} is not a sequence")))
}

fn eval(q: &PseudonormExpr, m: &Moving) -> Result<(Harmonic, Index)> {
    match q {
        PseudonormExpr::Norm(NormTag::Sup) => {
            let abs = m.abs()?;
            let s = Harmonic::constant(m.base.sup_norm());
            max_harmonic((abs.at, abs.from.clone()), (s, abs.from))
        }
        PseudonormExpr::Norm(NormTag::L1) => {
            if !m.base.is_zero_tail() {
                return Err(Error::NormUndefined(format!("l1 of {}", m.base)));
            }
            let abs = m.abs()?;
            let total = Harmonic::constant(m.base.l1_norm()?);
            Ok((abs.at.add(&total), abs.from))
        }
        PseudonormExpr::Norm(NormTag::Euclid) => Err(Error::FloatOnly("norm(euclid)".into())),
        PseudonormExpr::Restrict { inner, bound } => eval(inner, &m.abs()?.meet(seq(bound)?)?),
        PseudonormExpr::UnboundedSup { inner, family } => {
            let abs = m.abs()?;
            let mut best: Option<(Harmonic, Index)> = None;
            for a in family {
                let v = eval(inner, &abs.meet(seq(a)?)?)?;
                best = Some(match best {
                    None => v,
                    Some(b) => max_harmonic(b, v)?,
                });
            }
            best.ok_or(Error::EmptyFamily)
        }
        PseudonormExpr::Dual { pair, anchor, functional } => {
            let y = functional.abs();
            let end = y.element().as_seq().and_then(SeqElement::support_end).unwrap_or_default();
            let m = m.abs()?.meet(seq(&anchor.abs()?)?)?;
            let v = match pair.pairing {
                Pairing::Zero => Scalar::zero(),
                Pairing::Standard => pair.apply(&LatticeElement::Seq(m.base.clone()), &y)?,
            };
            Ok((Harmonic::constant(v), m.from.max(end + 1u8)))
        }
        PseudonormExpr::AbsWeak { pair, functional } => {
            let f = functional.abs();
            let end = f.element().as_seq().and_then(SeqElement::support_end).unwrap_or_default();
            let m = m.abs()?;
            let v = match pair.pairing {
                Pairing::Zero => Scalar::zero(),
                Pairing::Standard => pair.apply(&LatticeElement::Seq(m.base.clone()), &f)?,
            };
            Ok((Harmonic::constant(v), m.from.max(end + 1u8)))
        }
        PseudonormExpr::Project { .. } => {
            Err(Error::Unsupported("unit walks live in the sequence space, not in products".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Space;
    use crate::sampling::Sampler;

    fn direct(q: &PseudonormExpr, offset: &SeqElement, k: u64) -> Scalar {
        q.evaluate(&LatticeElement::Seq(offset.add(&SeqElement::unit(k as usize)))).unwrap()
    }

    #[test]
    fn harmonic_probe_gives_reciprocal() {
        let e = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()));
        let q = PseudonormExpr::sup().restrict(e).unwrap();
        let (v, _) = walk_value(&q, &SeqElement::zero()).unwrap();
        assert_eq!(v, Harmonic::new(Scalar::zero(), Scalar::one()));
        let (v, _) = walk_value(&PseudonormExpr::sup(), &SeqElement::zero()).unwrap();
        assert_eq!(v, Harmonic::constant(Scalar::one()));
    }

    #[test]
    fn closed_form_matches_direct_evaluation() {
        let mut s = Sampler::new(11);
        for _ in 0..300 {
            let q = s.expr(&Space::Seq, 3);
            let offset = s.element(&Space::Seq);
            let offset = offset.as_seq().unwrap();
            let Ok((v, n)) = walk_value(&q, offset) else { continue };
            for k in [n, n + 1, n + 5, 2 * n + 17] {
                assert_eq!(v.at(k), direct(&q, offset, k), "{q} offset {offset} k={k}");
            }
        }
    }
}
