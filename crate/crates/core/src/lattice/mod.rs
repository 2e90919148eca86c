//! Exact lattice arithmetic on the concrete carriers: ℚⁿ with coordinatewise
//! order, sequences with affine-harmonic tails, and finite products of both.

mod harmonic;
mod ideal;
mod seq;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use harmonic::{Harmonic, Index};
pub use ideal::{ideal_member, IdealCertificate, Refusal, RefusalReason};
pub use seq::SeqElement;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which Riesz space an element lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// ℚⁿ under the coordinatewise order.
    Coord(usize),
    /// Sequences with affine-harmonic tails under the pointwise order.
    Seq,
    Product(Vec<Space>),
}

impl Space {
    pub fn zero(&self) -> LatticeElement {
        match self {
            Space::Coord(n) => LatticeElement::Coord(CoordVector::zero(*n)),
            Space::Seq => LatticeElement::Seq(SeqElement::zero()),
            Space::Product(blocks) => LatticeElement::Product(blocks.iter().map(Space::zero).collect()),
        }
    }

    /// The constant element with every entry equal to one; a strong unit
    /// on coordinate spaces.
    pub fn ones(&self) -> LatticeElement {
        match self {
            Space::Coord(n) => LatticeElement::Coord(CoordVector(vec![Scalar::one(); *n])),
            Space::Seq => LatticeElement::Seq(SeqElement::constant(Scalar::one())),
            Space::Product(blocks) => LatticeElement::Product(blocks.iter().map(Space::ones).collect()),
        }
    }

    /// Dimension of a coordinate space.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Space::Coord(n) => Some(*n),
            _ => None,
        }
    }

    pub fn check(&self, x: &LatticeElement) -> Result<()> {
        let found = x.space();
        if &found == self {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected: self.clone(), found })
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Coord(n) => write!(f, "rn:{n}"),
            Space::Seq => write!(f, "seq"),
            Space::Product(blocks) => {
                write!(f, "prod(")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "seq" || s == "c0" {
            return Ok(Space::Seq);
        }
        if let Some(n) = s.strip_prefix("rn:") {
            return match n.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(Space::Coord(n)),
                _ => Err(Error::InvalidArgument(format!("bad dimension in `{s}`"))),
            };
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let blocks = inner.split(',').map(str::parse).collect::<Result<Vec<Space>>>()?;
            if blocks.is_empty() {
                return Err(Error::InvalidArgument("empty product space".into()));
            }
            return Ok(Space::Product(blocks));
        }
        Err(Error::InvalidArgument(format!("unknown space `{s}`")))
    }
}

/// Lattice norm tags. `Euclid` is irrational-valued and only available to
/// float-mode evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTag {
    Sup,
    L1,
    Euclid,
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormTag::Sup => "sup",
            NormTag::L1 => "l1",
            NormTag::Euclid => "euclid",
        })
    }
}

impl FromStr for NormTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" => Ok(NormTag::Sup),
            "l1" => Ok(NormTag::L1),
            "euclid" | "l2" => Ok(NormTag::Euclid),
            _ => Err(Error::InvalidArgument(format!("unknown norm `{s}`"))),
        }
    }
}

/// A point of ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordVector(pub Vec<Scalar>);

impl CoordVector {
    pub fn zero(n: usize) -> Self {
        CoordVector(vec![Scalar::zero(); n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = CoordVector::zero(n);
        v.0[k - 1] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

/// An element of one of the concrete Riesz spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeElement {
    Coord(CoordVector),
    Seq(SeqElement),
    Product(Vec<LatticeElement>),
}

impl From<SeqElement> for LatticeElement {
    fn from(s: SeqElement) -> Self {
        LatticeElement::Seq(s)
    }
}

impl From<CoordVector> for LatticeElement {
    fn from(v: CoordVector) -> Self {
        LatticeElement::Coord(v)
    }
}

impl LatticeElement {
    pub fn coord(values: Vec<Scalar>) -> Self {
        LatticeElement::Coord(CoordVector(values))
    }

    /// Coordinate vector from integers.
    pub fn ints(values: &[i64]) -> Self {
        LatticeElement::coord(values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn space(&self) -> Space {
        match self {
            LatticeElement::Coord(v) => Space::Coord(v.dim()),
            LatticeElement::Seq(_) => Space::Seq,
            LatticeElement::Product(blocks) => Space::Product(blocks.iter().map(LatticeElement::space).collect()),
        }
    }

    fn mismatch(&self, other: &LatticeElement) -> Error {
        Error::SpaceMismatch { expected: self.space(), found: other.space() }
    }

    fn binary(
        &self,
        other: &LatticeElement,
        coord: &dyn Fn(&Scalar, &Scalar) -> Scalar,
        seq: &dyn Fn(&SeqElement, &SeqElement) -> Result<SeqElement>,
    ) -> Result<LatticeElement> {
        match (self, other) {
            (LatticeElement::Coord(a), LatticeElement::Coord(b)) if a.dim() == b.dim() => {
                Ok(LatticeElement::coord(a.0.iter().zip(&b.0).map(|(x, y)| coord(x, y)).collect()))
            }
            (LatticeElement::Seq(a), LatticeElement::Seq(b)) => Ok(LatticeElement::Seq(seq(a, b)?)),
            (LatticeElement::Product(a), LatticeElement::Product(b)) if a.len() == b.len() => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.binary(y, coord, seq))
                .collect::<Result<Vec<_>>>()
                .map(LatticeElement::Product),
            _ => Err(self.mismatch(other)),
        }
    }

    fn unary(
        &self,
        coord: &dyn Fn(&Scalar) -> Scalar,
        seq: &dyn Fn(&SeqElement) -> Result<SeqElement>,
    ) -> Result<LatticeElement> {
        Ok(match self {
            LatticeElement::Coord(v) => LatticeElement::coord(v.0.iter().map(coord).collect()),
            LatticeElement::Seq(s) => LatticeElement::Seq(seq(s)?),
            LatticeElement::Product(blocks) => {
                LatticeElement::Product(blocks.iter().map(|b| b.unary(coord, seq)).collect::<Result<Vec<_>>>()?)
            }
        })
    }

    pub fn add(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.binary(other, &|x, y| x + y, &|a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.binary(other, &|x, y| x - y, &|a, b| Ok(a.sub(b)))
    }

    pub fn meet(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.binary(other, &|x, y| x.clone().min_of(y.clone()), &|a, b| a.meet(b))
    }

    pub fn join(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.binary(other, &|x, y| x.clone().max_of(y.clone()), &|a, b| a.join(b))
    }

    pub fn neg(&self) -> LatticeElement {
        self.unary(&|x| -x, &|s| Ok(s.neg())).expect("negation is total")
    }

    pub fn scale(&self, lambda: &Scalar) -> LatticeElement {
        self.unary(&|x| x * lambda, &|s| Ok(s.scale(lambda))).expect("scaling is total")
    }

    pub fn abs(&self) -> Result<LatticeElement> {
        self.unary(&Scalar::abs, &SeqElement::abs)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LatticeElement::Coord(v) => v.0.iter().all(Scalar::is_zero),
            LatticeElement::Seq(s) => s.is_zero(),
            LatticeElement::Product(blocks) => blocks.iter().all(LatticeElement::is_zero),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            LatticeElement::Coord(v) => v.0.iter().all(|x| !x.is_negative()),
            LatticeElement::Seq(s) => s.is_positive(),
            LatticeElement::Product(blocks) => blocks.iter().all(LatticeElement::is_positive),
        }
    }

    pub fn leq(&self, other: &LatticeElement) -> Result<bool> {
        Ok(other.sub(self)?.is_positive())
    }

    pub fn sup_norm(&self) -> Scalar {
        match self {
            LatticeElement::Coord(v) => v.0.iter().map(Scalar::abs).max().unwrap_or_default(),
            LatticeElement::Seq(s) => s.sup_norm(),
            LatticeElement::Product(blocks) => blocks.iter().map(LatticeElement::sup_norm).max().unwrap_or_default(),
        }
    }

    pub fn l1_norm(&self) -> Result<Scalar> {
        match self {
            LatticeElement::Coord(v) => Ok(v.0.iter().map(Scalar::abs).sum()),
            LatticeElement::Seq(s) => s.l1_norm(),
            LatticeElement::Product(blocks) => blocks.iter().map(LatticeElement::l1_norm).sum::<Result<Scalar>>(),
        }
    }

    pub fn norm(&self, tag: NormTag) -> Result<Scalar> {
        match tag {
            NormTag::Sup => Ok(self.sup_norm()),
            NormTag::L1 => self.l1_norm(),
            NormTag::Euclid => Err(Error::FloatOnly("the Euclidean norm is irrational-valued; use float mode".into())),
        }
    }

    /// Copy of `self` zeroed wherever `mask` vanishes.
    pub fn restrict_to_support_of(&self, mask: &LatticeElement) -> Result<LatticeElement> {
        self.binary(mask, &|x, m| if m.is_zero() { Scalar::zero() } else { x.clone() }, &|a, m| {
            Ok(a.restrict_to_support_of(m))
        })
    }

    /// Whether every member of the tail-carrying structure has a zero tail,
    /// i.e. the element is finitely supported.
    pub fn is_finitely_supported(&self) -> bool {
        match self {
            LatticeElement::Coord(_) => true,
            LatticeElement::Seq(s) => s.is_zero_tail(),
            LatticeElement::Product(blocks) => blocks.iter().all(LatticeElement::is_finitely_supported),
        }
    }

    pub fn block(&self, j: usize) -> Result<&LatticeElement> {
        match self {
            LatticeElement::Product(blocks) => {
                blocks.get(j).ok_or_else(|| Error::InvalidArgument(format!("product has no block {j}")))
            }
            _ => Err(Error::InvalidArgument(format!("{} is not a product space", self.space()))),
        }
    }

    pub fn as_seq(&self) -> Option<&SeqElement> {
        match self {
            LatticeElement::Seq(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_coord(&self) -> Option<&CoordVector> {
        match self {
            LatticeElement::Coord(v) => Some(v),
            _ => None,
        }
    }

    /// Float image of a coordinate vector.
    pub fn to_f64_coords(&self) -> Result<Vec<f64>> {
        match self {
            LatticeElement::Coord(v) => Ok(v.0.iter().map(Scalar::to_f64).collect()),
            _ => Err(Error::Unsupported(format!(
                "float evaluation is limited to coordinate spaces, got {}",
                self.space()
            ))),
        }
    }

    /// Strong order unit: every element is dominated by a multiple of `self`.
    pub fn is_strong_unit(&self) -> Result<bool> {
        self.require_positive()?;
        Ok(match self {
            LatticeElement::Coord(v) => v.0.iter().all(Scalar::is_positive),
            LatticeElement::Seq(s) => s.tail().d.is_positive() && s.all_entries_positive(),
            LatticeElement::Product(blocks) => {
                blocks.iter().map(LatticeElement::is_strong_unit).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b)
            }
        })
    }

    /// Quasi-interior point; on sequences this is taken relative to c₀.
    pub fn is_quasi_interior(&self) -> Result<bool> {
        self.require_positive()?;
        Ok(match self {
            LatticeElement::Coord(v) => v.0.iter().all(Scalar::is_positive),
            LatticeElement::Seq(s) => s.all_entries_positive(),
            LatticeElement::Product(blocks) => {
                blocks.iter().map(LatticeElement::is_quasi_interior).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b)
            }
        })
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositive(self.to_string()))
        }
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeElement::Coord(v) => {
                write!(f, "[")?;
                for (i, x) in v.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            LatticeElement::Seq(s) => write!(f, "{s}"),
            LatticeElement::Product(blocks) => {
                write!(f, "(")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: Scalar, c: Scalar) -> LatticeElement {
        LatticeElement::Seq(SeqElement::harmonic(d, c))
    }

    #[test]
    fn coordinate_lattice_ops() {
        let x = LatticeElement::ints(&[1, 2]);
        let y = LatticeElement::ints(&[2, 1]);
        assert_eq!(x.meet(&y).unwrap(), LatticeElement::ints(&[1, 1]));
        assert_eq!(x.join(&y).unwrap(), LatticeElement::ints(&[2, 2]));
        assert_eq!(LatticeElement::ints(&[-3, 0, 2]).abs().unwrap(), LatticeElement::ints(&[3, 0, 2]));
        assert_eq!(LatticeElement::ints(&[3, -4, 1]).sup_norm(), Scalar::from_int(4));
        assert_eq!(LatticeElement::ints(&[1, -2, 3]).l1_norm().unwrap(), Scalar::from_int(6));
    }

    #[test]
    fn space_mismatch_is_reported() {
        let x = LatticeElement::ints(&[1, 2]);
        let y = LatticeElement::ints(&[1, 2, 3]);
        assert!(matches!(x.meet(&y), Err(Error::SpaceMismatch { .. })));
        let s = seq(Scalar::zero(), Scalar::one());
        assert!(matches!(x.add(&s), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn units_and_quasi_interior_points() {
        assert!(LatticeElement::ints(&[1, 1, 1]).is_strong_unit().unwrap());
        let e = seq(Scalar::zero(), Scalar::one());
        assert!(!e.is_strong_unit().unwrap());
        assert!(e.is_quasi_interior().unwrap());
        let gap =
            LatticeElement::Seq(SeqElement::new(vec![Scalar::zero()], Harmonic::new(Scalar::zero(), Scalar::one())));
        assert!(!gap.is_quasi_interior().unwrap());
        assert!(seq(Scalar::one(), Scalar::one()).is_strong_unit().unwrap());
        assert!(matches!(LatticeElement::ints(&[1, -1]).is_strong_unit(), Err(Error::NotPositive(_))));
    }

    #[test]
    fn product_blocks() {
        let x = LatticeElement::Product(vec![LatticeElement::ints(&[1, 2]), LatticeElement::ints(&[0, 0, 5])]);
        assert_eq!(x.space().to_string(), "prod(rn:2,rn:3)");
        assert_eq!(x.sup_norm(), Scalar::from_int(5));
        assert_eq!(x.block(1).unwrap(), &LatticeElement::ints(&[0, 0, 5]));
    }

    #[test]
    fn space_literals_roundtrip() {
        for s in ["rn:3", "seq", "prod(rn:2,rn:3)"] {
            assert_eq!(s.parse::<Space>().unwrap().to_string(), s);
        }
        assert!("rn:0".parse::<Space>().is_err());
    }
}
