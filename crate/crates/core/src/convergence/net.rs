use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, SeqElement, Space};
use crate::scalar::Scalar;

/// Scalar rate `r_k` of a scaled or monotone net.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rate {
    Harmonic,
    Geometric,
    Constant,
}

impl Rate {
    pub fn value(self, k: u64) -> Scalar {
        match self {
            Rate::Harmonic => Scalar::recip_index(k),
            Rate::Geometric => Scalar::inv_pow2(u32::try_from(k).unwrap_or(u32::MAX)),
            Rate::Constant => Scalar::one(),
        }
    }

    pub fn value_f64(self, k: u64) -> f64 {
        match self {
            Rate::Harmonic => 1.0 / k as f64,
            Rate::Geometric => 0.5f64.powi(i32::try_from(k).unwrap_or(i32::MAX)),
            Rate::Constant => 1.0,
        }
    }

    pub fn is_null(self) -> bool {
        self != Rate::Constant
    }

    /// Smallest `k >= 1` with `r_k · c <= h`, for `h > 0` and a null rate.
    pub fn first_index_below(self, c: &Scalar, h: &Scalar) -> u64 {
        match self {
            Rate::Constant => unreachable!("constant rates never fall"),
            Rate::Harmonic => (c / h).ceil_index().unwrap_or(u64::MAX).max(1),
            Rate::Geometric => {
                let mut k = 1u64;
                let mut v = c / &Scalar::from_int(2);
                while &v > h {
                    v = &v / &Scalar::from_int(2);
                    k += 1;
                }
                k
            }
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rate::Harmonic => "1/k",
            Rate::Geometric => "1/2^k",
            Rate::Constant => "const",
        })
    }
}

/// What a table net does after its explicit entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableTail {
    /// Repeat the last entry.
    Repeat,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    None,
}

impl Monotonicity {
    pub fn is_decreasing(self) -> bool {
        matches!(self, Monotonicity::Decreasing | Monotonicity::Constant)
    }

    pub fn is_increasing(self) -> bool {
        matches!(self, Monotonicity::Increasing | Monotonicity::Constant)
    }

    pub fn is_monotone(self) -> bool {
        self != Monotonicity::None
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Constant => "constant",
            Monotonicity::None => "none",
        })
    }
}

/// An ℕ-indexed net.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NetSpec {
    Table {
        entries: Vec<LatticeElement>,
        tail: TableTail,
    },
    /// `k ↦ e_k` in the sequence space.
    UnitWalk,
    /// `k ↦ r_k · v`.
    Scaled {
        v: LatticeElement,
        rate: Rate,
    },
    /// `k ↦ x − r_k·|x|`, increasing to `x`.
    MonotoneUp {
        limit: LatticeElement,
        rate: Rate,
    },
    /// Float-only: coordinate `j` at `k` is `base_j + amp_j · sin k`.
    Sinusoid {
        base: Vec<Scalar>,
        amp: Vec<Scalar>,
    },
}

/// Closed form of `x_k − L`.
#[derive(Clone, Debug, PartialEq)]
pub enum Deficit {
    /// `head[k−1]` for `k <= head.len()`, then `tail`.
    EventuallyConstant { head: Vec<LatticeElement>, tail: LatticeElement },
    /// `offset + r_k · dir` with a null rate.
    Affine { offset: LatticeElement, rate: Rate, dir: LatticeElement },
    /// `offset + e_k`.
    Walk { offset: SeqElement },
}

impl Deficit {
    pub fn at(&self, k: u64) -> LatticeElement {
        match self {
            Deficit::EventuallyConstant { head, tail } => head.get(k as usize - 1).unwrap_or(tail).clone(),
            Deficit::Affine { offset, rate, dir } => {
                offset.add(&dir.scale(&rate.value(k))).expect("deficit parts share a space")
            }
            Deficit::Walk { offset } => LatticeElement::Seq(offset.add(&SeqElement::unit(k as usize))),
        }
    }
}

impl NetSpec {
    /// The planar net `(2 + sin k, 0)`.
    pub fn sin2d() -> Self {
        NetSpec::Sinusoid { base: vec![Scalar::from_int(2), Scalar::zero()], amp: vec![Scalar::one(), Scalar::zero()] }
    }

    pub fn table(entries: Vec<LatticeElement>, tail: TableTail) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::InvalidArgument("empty net table".into()))?;
        let space = first.space();
        for e in &entries {
            space.check(e)?;
        }
        Ok(NetSpec::Table { entries, tail })
    }

    pub fn scaled(v: LatticeElement, rate: Rate) -> Self {
        NetSpec::Scaled { v, rate }
    }

    pub fn monotone_up(limit: LatticeElement, rate: Rate) -> Self {
        NetSpec::MonotoneUp { limit, rate }
    }

    pub fn space(&self) -> Space {
        match self {
            NetSpec::Table { entries, .. } => entries[0].space(),
            NetSpec::UnitWalk => Space::Seq,
            NetSpec::Scaled { v, .. } => v.space(),
            NetSpec::MonotoneUp { limit, .. } => limit.space(),
            NetSpec::Sinusoid { base, .. } => Space::Coord(base.len()),
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, NetSpec::Sinusoid { .. })
    }

    pub fn value_at(&self, k: u64) -> Result<LatticeElement> {
        if k == 0 {
            return Err(Error::InvalidArgument("nets are indexed from 1".into()));
        }
        Ok(match self {
            NetSpec::Table { entries, tail } => match entries.get(k as usize - 1) {
                Some(e) => e.clone(),
                None => match tail {
                    TableTail::Repeat => entries[entries.len() - 1].clone(),
                    TableTail::Zero => entries[0].space().zero(),
                },
            },
            NetSpec::UnitWalk => LatticeElement::Seq(SeqElement::unit(k as usize)),
            NetSpec::Scaled { v, rate } => v.scale(&rate.value(k)),
            NetSpec::MonotoneUp { limit, rate } => limit.sub(&limit.abs()?.scale(&rate.value(k)))?,
            NetSpec::Sinusoid { .. } => return Err(Error::FloatOnly(self.to_string())),
        })
    }

    /// Float image at `k`; coordinate spaces only.
    pub fn value_at_f64(&self, k: u64) -> Result<Vec<f64>> {
        match self {
            NetSpec::Sinusoid { base, amp } => {
                let s = (k as f64).sin();
                Ok(base.iter().zip(amp).map(|(b, a)| b.to_f64() + a.to_f64() * s).collect())
            }
            _ => self.value_at(k)?.to_f64_coords(),
        }
    }

    /// Exact monotonicity of the whole net.
    pub fn monotonicity(&self) -> Result<Monotonicity> {
        Ok(match self {
            NetSpec::Table { entries, tail } => {
                let mut seq: Vec<&LatticeElement> = entries.iter().collect();
                let zero = entries[0].space().zero();
                if *tail == TableTail::Zero {
                    seq.push(&zero);
                }
                let (mut up, mut down) = (true, true);
                for w in seq.windows(2) {
                    up &= w[0].leq(w[1])?;
                    down &= w[1].leq(w[0])?;
                }
                classify(up, down)
            }
            NetSpec::UnitWalk => Monotonicity::None,
            NetSpec::Scaled { v, rate } => {
                if *rate == Rate::Constant || v.is_zero() {
                    Monotonicity::Constant
                } else {
                    classify(v.neg().is_positive(), v.is_positive())
                }
            }
            NetSpec::MonotoneUp { limit, rate } => {
                if *rate == Rate::Constant || limit.is_zero() {
                    Monotonicity::Constant
                } else {
                    Monotonicity::Increasing
                }
            }
            NetSpec::Sinusoid { amp, .. } => {
                if amp.iter().all(Scalar::is_zero) {
                    Monotonicity::Constant
                } else {
                    Monotonicity::None
                }
            }
        })
    }

    /// Closed form of `x_k − limit`.
    pub fn deficit(&self, limit: &LatticeElement) -> Result<Deficit> {
        if self.is_float() {
            return Err(Error::FloatOnly(self.to_string()));
        }
        self.space().check(limit)?;
        Ok(match self {
            NetSpec::Table { entries, tail } => {
                let head = entries.iter().map(|e| e.sub(limit)).collect::<Result<Vec<_>>>()?;
                let last = match tail {
                    TableTail::Repeat => entries[entries.len() - 1].clone(),
                    TableTail::Zero => limit.space().zero(),
                };
                Deficit::EventuallyConstant { head, tail: last.sub(limit)? }
            }
            NetSpec::UnitWalk => {
                let l = limit.as_seq().expect("space checked");
                Deficit::Walk { offset: l.neg() }
            }
            NetSpec::Scaled { v, rate } => match rate {
                Rate::Constant => Deficit::EventuallyConstant { head: vec![], tail: v.sub(limit)? },
                _ => Deficit::Affine { offset: limit.neg(), rate: *rate, dir: v.clone() },
            },
            NetSpec::MonotoneUp { limit: x, rate } => {
                let dir = x.abs()?.neg();
                match rate {
                    Rate::Constant => Deficit::EventuallyConstant { head: vec![], tail: x.add(&dir)?.sub(limit)? },
                    _ => Deficit::Affine { offset: x.sub(limit)?, rate: *rate, dir },
                }
            }
            NetSpec::Sinusoid { .. } => unreachable!(),
        })
    }
}

fn classify(up: bool, down: bool) -> Monotonicity {
    match (up, down) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => Monotonicity::None,
    }
}

impl fmt::Display for NetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetSpec::Table { entries, tail } => {
                write!(f, "table([")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                let tail = match tail {
                    TableTail::Repeat => "const",
                    TableTail::Zero => "zero",
                };
                write!(f, "]; tail={tail})")
            }
            NetSpec::UnitWalk => write!(f, "unitwalk"),
            NetSpec::Scaled { v, rate } => write!(f, "scaled({v}, rate={rate})"),
            NetSpec::MonotoneUp { limit, rate } => write!(f, "monup(limit={limit}, rate={rate})"),
            NetSpec::Sinusoid { base, amp } => {
                if *self == NetSpec::sin2d() {
                    return write!(f, "sin2d");
                }
                let list = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",");
                write!(f, "sinusoid(base=[{}], amp=[{}])", list(base), list(amp))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_examples() {
        assert_eq!(
            NetSpec::UnitWalk.value_at(3).unwrap(),
            LatticeElement::Seq(SeqElement::finite(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]))
        );
        let net = NetSpec::scaled(LatticeElement::ints(&[1, 1]), Rate::Harmonic);
        assert_eq!(net.value_at(4).unwrap(), LatticeElement::coord(vec![Scalar::ratio(1, 4), Scalar::ratio(1, 4)]));
        let v = NetSpec::sin2d().value_at_f64(1).unwrap();
        assert_eq!(v, vec![2.0 + 1f64.sin(), 0.0]);
        assert!(matches!(NetSpec::sin2d().value_at(1), Err(Error::FloatOnly(_))));
    }

    #[test]
    fn deficits_match_values() {
        let limit = LatticeElement::ints(&[1, -2]);
        let nets = [
            NetSpec::scaled(LatticeElement::ints(&[3, -1]), Rate::Geometric),
            NetSpec::monotone_up(LatticeElement::ints(&[1, -2]), Rate::Harmonic),
            NetSpec::table(vec![LatticeElement::ints(&[0, 0]), LatticeElement::ints(&[5, 5])], TableTail::Repeat)
                .unwrap(),
        ];
        for net in nets {
            let d = net.deficit(&limit).unwrap();
            for k in 1..12 {
                assert_eq!(d.at(k), net.value_at(k).unwrap().sub(&limit).unwrap(), "{net} at {k}");
            }
        }
        let l = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()));
        let d = NetSpec::UnitWalk.deficit(&l).unwrap();
        for k in 1..12 {
            assert_eq!(d.at(k), NetSpec::UnitWalk.value_at(k).unwrap().sub(&l).unwrap());
        }
    }

    #[test]
    fn monotonicity_tags() {
        let up = NetSpec::monotone_up(LatticeElement::ints(&[1, -2]), Rate::Harmonic);
        assert_eq!(up.monotonicity().unwrap(), Monotonicity::Increasing);
        let down = NetSpec::scaled(LatticeElement::ints(&[1, 2]), Rate::Harmonic);
        assert_eq!(down.monotonicity().unwrap(), Monotonicity::Decreasing);
        let mixed = NetSpec::scaled(LatticeElement::ints(&[1, -2]), Rate::Harmonic);
        assert_eq!(mixed.monotonicity().unwrap(), Monotonicity::None);
        assert_eq!(NetSpec::UnitWalk.monotonicity().unwrap(), Monotonicity::None);
        let t = NetSpec::table(vec![LatticeElement::ints(&[2]), LatticeElement::ints(&[1])], TableTail::Zero).unwrap();
        assert_eq!(t.monotonicity().unwrap(), Monotonicity::Decreasing);
    }

    #[test]
    fn first_index_below() {
        let c = Scalar::from_int(3);
        let h = Scalar::ratio(1, 2);
        assert_eq!(Rate::Harmonic.first_index_below(&c, &h), 6);
        assert_eq!(Rate::Geometric.first_index_below(&c, &h), 3);
    }
}
