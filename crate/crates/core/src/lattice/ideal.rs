use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{Harmonic, Index, LatticeElement, SeqElement};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefusalReason {
    /// `b` is nonzero where the generator sum vanishes.
    OutsideSupport,
    /// `|b_k| / s_k` is unbounded along the tail.
    UnboundedRatio,
}

/// Where domination `|b| <= K·s` fails for every admissible `K`, or for the
/// best constant available from the earlier indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refusal {
    /// Block of a product element, `None` outside products.
    pub block: Option<usize>,
    /// 1-indexed coordinate or sequence index.
    pub index: usize,
    pub reason: RefusalReason,
}

/// Outcome of an ideal membership test `b ∈ I(gens)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealCertificate {
    /// `|b| <= constant · (g₁ + … + g_q)` holds at every index.
    Member {
        generators: Vec<LatticeElement>,
        constant: Scalar,
    },
    Refused(Refusal),
}

impl IdealCertificate {
    pub fn constant(&self) -> Option<&Scalar> {
        match self {
            IdealCertificate::Member { constant, .. } => Some(constant),
            IdealCertificate::Refused(_) => None,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, IdealCertificate::Member { .. })
    }

    /// Re-check `|b| <= K·Σ gens` with exact lattice order, independently of
    /// how `K` was found.
    pub fn verify(&self, b: &LatticeElement) -> Result<bool> {
        match self {
            IdealCertificate::Member { generators, constant } => {
                let sum = generator_sum(generators)?;
                b.abs()?.leq(&sum.scale(constant))
            }
            IdealCertificate::Refused(_) => Ok(false),
        }
    }
}

impl fmt::Display for IdealCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealCertificate::Member { constant, .. } => write!(f, "member K={constant}"),
            IdealCertificate::Refused(r) => {
                let why = match r.reason {
                    RefusalReason::OutsideSupport => "outside support",
                    RefusalReason::UnboundedRatio => "unbounded ratio",
                };
                match r.block {
                    Some(b) => write!(f, "refused ({why}) at block {b} index {}", r.index),
                    None => write!(f, "refused ({why}) at index {}", r.index),
                }
            }
        }
    }
}

fn generator_sum(gens: &[LatticeElement]) -> Result<LatticeElement> {
    let (first, rest) =
        gens.split_first().ok_or_else(|| Error::InvalidArgument("ideal needs at least one generator".into()))?;
    rest.iter().try_fold(first.clone(), |acc, g| acc.add(g))
}

/// Decide whether `b` lies in the ideal generated by the positive `gens`,
/// returning the least constant `K` with `|b| <= K·Σ gens`.
pub fn ideal_member(b: &LatticeElement, gens: &[LatticeElement]) -> Result<IdealCertificate> {
    for g in gens {
        if !g.is_positive() {
            return Err(Error::NotPositive(g.to_string()));
        }
        if g.space() != b.space() {
            return Err(Error::SpaceMismatch { expected: b.space(), found: g.space() });
        }
    }
    let sum = generator_sum(gens)?;
    let b = b.abs()?;
    Ok(match least_constant(&b, &sum, None)? {
        Ok(constant) => IdealCertificate::Member { generators: gens.to_vec(), constant },
        Err(refusal) => IdealCertificate::Refused(refusal),
    })
}

type Ratio = std::result::Result<Scalar, Refusal>;

fn least_constant(b: &LatticeElement, s: &LatticeElement, block: Option<usize>) -> Result<Ratio> {
    match (b, s) {
        (LatticeElement::Coord(b), LatticeElement::Coord(s)) => {
            let mut k = Scalar::zero();
            for (i, (bi, si)) in b.0.iter().zip(&s.0).enumerate() {
                if si.is_zero() {
                    if !bi.is_zero() {
                        return Ok(Err(Refusal { block, index: i + 1, reason: RefusalReason::OutsideSupport }));
                    }
                } else {
                    k = k.max_of(bi / si);
                }
            }
            Ok(Ok(k))
        }
        (LatticeElement::Seq(b), LatticeElement::Seq(s)) => Ok(seq_constant(b, s, block)),
        (LatticeElement::Product(bs), LatticeElement::Product(ss)) => {
            let mut k = Scalar::zero();
            for (j, (bj, sj)) in bs.iter().zip(ss).enumerate() {
                match least_constant(bj, sj, Some(j))? {
                    Ok(kj) => k = k.max_of(kj),
                    Err(r) => return Ok(Err(r)),
                }
            }
            Ok(Ok(k))
        }
        _ => Err(Error::SpaceMismatch { expected: s.space(), found: b.space() }),
    }
}

/// `b` is already `|b|`, `s` is positive.
///
/// On a range where both are single harmonics, `b/s` is a Möbius function
/// of `k` with its pole at the zero of `s`; a positive `s` vanishes at most
/// at one integer there, and off it the ratio is monotone, so endpoints and
/// limits bound it.
fn seq_constant(b: &SeqElement, s: &SeqElement, block: Option<usize>) -> Ratio {
    let refuse = |index: Index, reason| Err(Refusal { block, index: index.to_usize().unwrap_or(usize::MAX), reason });
    let ratio = |gb: &Harmonic, gs: &Harmonic, k: &Index| &gb.at_index(k) / &gs.at_index(k);

    let mut k = Scalar::zero();
    for (start, end, gb, gs) in b.overlapping(s) {
        if gs.is_zero() {
            if gb.is_zero() {
                continue;
            }
            let i = if gb.at_index(&start).is_zero() { start + 1u8 } else { start };
            return refuse(i, RefusalReason::OutsideSupport);
        }
        // Split off the single index where s may vanish.
        let mut ranges = vec![(start.clone(), end.clone())];
        if !gs.d.is_zero() {
            let root = -(&gs.c / &gs.d);
            if root.is_integer() && root.is_positive() {
                let r = root.floor_natural().expect("positive integer");
                if r >= start && end.as_ref().is_none_or(|e| r <= *e) {
                    if !gb.at_index(&r).is_zero() {
                        return refuse(r, RefusalReason::OutsideSupport);
                    }
                    ranges = Vec::new();
                    if r > start {
                        ranges.push((start.clone(), Some(&r - 1u8)));
                    }
                    if end.as_ref() != Some(&r) {
                        ranges.push((r + 1u8, end.clone()));
                    }
                }
            }
        }
        for (lo, hi) in ranges {
            k = k.max_of(ratio(gb, gs, &lo));
            match hi {
                Some(hi) => k = k.max_of(ratio(gb, gs, &hi)),
                None if gs.d.is_positive() => k = k.max_of(&gb.d / &gs.d),
                // s_k = c_s / k with c_s > 0.
                None if gb.d.is_zero() => k = k.max_of(&gb.c / &gs.c),
                None => {
                    // (d_b k + c_b) / c_s passes any bound; report where it
                    // passes the constant so far.
                    let target = k.clone().max_of(Scalar::one());
                    let bound = (&(&target * &gs.c) - &gb.c) / &gb.d;
                    let i = bound.floor_natural().map_or_else(Index::default, |f| f + 1u8).max(lo);
                    return refuse(i, RefusalReason::UnboundedRatio);
                }
            }
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Harmonic;

    #[test]
    fn coordinate_certificate() {
        let b = LatticeElement::ints(&[0, 3, 0]);
        let gens = [LatticeElement::ints(&[0, 1, 0]), LatticeElement::ints(&[1, 1, 0])];
        let cert = ideal_member(&b, &gens).unwrap();
        assert_eq!(cert.constant(), Some(&Scalar::ratio(3, 2)));
        assert!(cert.verify(&b).unwrap());
    }

    #[test]
    fn coordinate_refusal() {
        let cert = ideal_member(&LatticeElement::ints(&[1, 0]), &[LatticeElement::ints(&[0, 1])]).unwrap();
        assert_eq!(
            cert,
            IdealCertificate::Refused(Refusal { block: None, index: 1, reason: RefusalReason::OutsideSupport })
        );
    }

    #[test]
    fn sequence_tail_ratio() {
        let e = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()));
        let b = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::from_int(2)));
        let cert = ideal_member(&b, &[e.clone()]).unwrap();
        assert_eq!(cert.constant(), Some(&Scalar::from_int(2)));
        assert!(cert.verify(&b).unwrap());

        let one = LatticeElement::Seq(SeqElement::constant(Scalar::one()));
        let cert = ideal_member(&one, &[e]).unwrap();
        assert!(matches!(cert, IdealCertificate::Refused(Refusal { reason: RefusalReason::UnboundedRatio, .. })));
    }

    #[test]
    fn sequence_ratio_peaks_inside_tail() {
        // b = 1 + 1/k, s = 1 - 1/(2k): ratio (2k+2)/(2k-1) is largest at k=1.
        let b = LatticeElement::Seq(SeqElement::harmonic(Scalar::one(), Scalar::one()));
        let s = LatticeElement::Seq(SeqElement::harmonic(Scalar::one(), Scalar::ratio(-1, 2)));
        let cert = ideal_member(&b, &[s]).unwrap();
        assert_eq!(cert.constant(), Some(&Scalar::from_int(4)));
        assert!(cert.verify(&b).unwrap());
    }

    #[test]
    fn finitely_supported_generators() {
        let g = LatticeElement::Seq(SeqElement::finite(vec![Scalar::one(), Scalar::one()]));
        let inside = LatticeElement::Seq(SeqElement::finite(vec![Scalar::from_int(-3)]));
        assert_eq!(ideal_member(&inside, &[g.clone()]).unwrap().constant(), Some(&Scalar::from_int(3)));
        let outside = LatticeElement::Seq(SeqElement::new(vec![], Harmonic::new(Scalar::zero(), Scalar::one())));
        let cert = ideal_member(&outside, &[g]).unwrap();
        assert_eq!(
            cert,
            IdealCertificate::Refused(Refusal { block: None, index: 3, reason: RefusalReason::OutsideSupport })
        );
    }

    #[test]
    fn rejects_non_positive_generators() {
        assert!(matches!(
            ideal_member(&LatticeElement::ints(&[1]), &[LatticeElement::ints(&[-1])]),
            Err(Error::NotPositive(_))
        ));
    }
}
