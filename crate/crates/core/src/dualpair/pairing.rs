use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, SeqElement, Space};
use crate::scalar::Scalar;

/// The bilinear map of a dual pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `T(x, y) = Σ x_k y_k`.
    Standard,
    /// Identically zero. Bilinear and positive but not separating; kept as a
    /// negative control.
    Zero,
}

/// A positive dual pair between a primal carrier and its finitely supported
/// functionals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualPair {
    pub space: Space,
    pub pairing: Pairing,
}

impl DualPair {
    pub fn standard(space: Space) -> Self {
        DualPair { space, pairing: Pairing::Standard }
    }

    pub fn zeroed(space: Space) -> Self {
        DualPair { space, pairing: Pairing::Zero }
    }

    /// `T(x, y)`, an exact finite sum over the support of `y`.
    pub fn apply(&self, x: &LatticeElement, y: &Functional) -> Result<Scalar> {
        self.space.check(x)?;
        self.space.check(y.element())?;
        Ok(match self.pairing {
            Pairing::Standard => standard_pairing(x, y.element())?,
            Pairing::Zero => Scalar::zero(),
        })
    }
}

impl fmt::Display for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pairing {
            Pairing::Standard => write!(f, "pair(E={})", self.space),
            Pairing::Zero => write!(f, "pair(E={}, T=zero)", self.space),
        }
    }
}

fn standard_pairing(x: &LatticeElement, y: &LatticeElement) -> Result<Scalar> {
    match (x, y) {
        (LatticeElement::Coord(a), LatticeElement::Coord(b)) => {
            Ok(a.coords().iter().zip(b.coords()).map(|(s, t)| s * t).sum())
        }
        (LatticeElement::Seq(a), LatticeElement::Seq(b)) => a.dot_finite(b),
        (LatticeElement::Product(a), LatticeElement::Product(b)) => {
            a.iter().zip(b).map(|(s, t)| standard_pairing(s, t)).sum()
        }
        _ => unreachable!("spaces checked by caller"),
    }
}

/// A finitely supported functional; on sequences its tail is zero so every
/// pairing is a finite sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functional(LatticeElement);

impl Functional {
    pub fn new(element: LatticeElement) -> Result<Self> {
        if !element.is_finitely_supported() {
            return Err(Error::InvalidArgument(format!("functional {element} must have a zero tail")));
        }
        Ok(Functional(element))
    }

    /// The unit functional at 1-indexed `index`.
    pub fn unit(space: &Space, index: usize) -> Result<Self> {
        match space {
            Space::Coord(n) if (1..=*n).contains(&index) => {
                let mut v = vec![Scalar::zero(); *n];
                v[index - 1] = Scalar::one();
                Ok(Functional(LatticeElement::coord(v)))
            }
            Space::Seq if index >= 1 => Ok(Functional(LatticeElement::Seq(SeqElement::unit(index)))),
            _ => Err(Error::InvalidArgument(format!("no unit functional {index} on {space}"))),
        }
    }

    pub fn element(&self) -> &LatticeElement {
        &self.0
    }

    pub fn abs(&self) -> Functional {
        Functional(self.0.abs().expect("finitely supported abs is exact"))
    }

    pub fn scale(&self, lambda: &Scalar) -> Functional {
        Functional(self.0.scale(lambda))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_pairing() {
        let pair = DualPair::standard(Space::Coord(3));
        let x = LatticeElement::ints(&[1, 2, 3]);
        let y = Functional::new(LatticeElement::ints(&[1, 0, 1])).unwrap();
        assert_eq!(pair.apply(&x, &y).unwrap(), Scalar::from_int(4));
        let zero = Functional::new(LatticeElement::ints(&[0, 0, 0])).unwrap();
        assert_eq!(pair.apply(&x, &zero).unwrap(), Scalar::zero());
    }

    #[test]
    fn sequence_pairing_is_a_finite_sum() {
        let pair = DualPair::standard(Space::Seq);
        let e = LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()));
        let y = Functional::unit(&Space::Seq, 3).unwrap();
        assert_eq!(pair.apply(&e, &y).unwrap(), Scalar::ratio(1, 3));
    }

    #[test]
    fn functionals_need_zero_tails() {
        let e = LatticeElement::Seq(SeqElement::constant(Scalar::one()));
        assert!(Functional::new(e).is_err());
    }
}
