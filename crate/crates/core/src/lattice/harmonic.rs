use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Sequence index. Crossovers of tails with tiny limits land far beyond
/// any machine word, so pieces are addressed with unbounded integers.
pub type Index = BigUint;

/// The affine-harmonic function `k ↦ d + c/k` on positive integers.
///
/// Any two such functions are eventually ordered lexicographically by
/// `(d, c)`, which is what makes meets and joins of sequence tails exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Harmonic {
    pub d: Scalar,
    pub c: Scalar,
}

impl Harmonic {
    pub fn new(d: Scalar, c: Scalar) -> Self {
        Harmonic { d, c }
    }

    pub fn zero() -> Self {
        Harmonic::new(Scalar::zero(), Scalar::zero())
    }

    pub fn constant(d: Scalar) -> Self {
        Harmonic::new(d, Scalar::zero())
    }

    pub fn at(&self, k: u64) -> Scalar {
        debug_assert!(k >= 1);
        if self.c.is_zero() {
            return self.d.clone();
        }
        &self.d + &(&self.c * &Scalar::recip_index(k))
    }

    pub fn at_index(&self, k: &Index) -> Scalar {
        match k.to_u64() {
            Some(k) => self.at(k),
            None => &self.d + &(&self.c * &Scalar::recip_big(k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.c.is_zero()
    }

    /// First index `s >= 1` from which `self - other` has the strict sign of
    /// its limit; before `s` the difference is zero or of the opposite sign.
    /// When the limits agree the sign never changes and `s = 1`.
    pub fn split_index(&self, other: &Harmonic) -> Index {
        let dd = &self.d - &other.d;
        if dd.is_zero() {
            return Index::one();
        }
        // (d₁-d₂) + (c₁-c₂)/k vanishes at k₀ = -(c₁-c₂)/(d₁-d₂).
        let root = -(&(&self.c - &other.c) / &dd);
        match root.floor_natural() {
            Some(f) if root.is_positive() => f + 1u8,
            _ => Index::one(),
        }
    }

    pub fn limit(&self) -> &Scalar {
        &self.d
    }

    /// Eventual order: the order of `self.at(k)` and `other.at(k)` for all
    /// `k` beyond [`Harmonic::crossover`].
    pub fn eventual_cmp(&self, other: &Harmonic) -> Ordering {
        self.d.cmp(&other.d).then_with(|| self.c.cmp(&other.c))
    }

    /// Smallest `n` such that the eventual order holds at every `k > n`.
    pub fn crossover(&self, other: &Harmonic) -> Index {
        if self.d == other.d {
            return Index::default();
        }
        self.split_index(other) - 1u8
    }

    pub fn eventual_min(&self, other: &Harmonic) -> Harmonic {
        match self.eventual_cmp(other) {
            Ordering::Greater => other.clone(),
            _ => self.clone(),
        }
    }

    pub fn eventual_max(&self, other: &Harmonic) -> Harmonic {
        match self.eventual_cmp(other) {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        }
    }

    /// Eventual absolute value together with the index beyond which it holds.
    pub fn eventual_abs(&self) -> (Harmonic, Index) {
        let neg = self.neg();
        let n = self.crossover(&neg);
        (self.eventual_max(&neg), n)
    }

    pub fn add(&self, other: &Harmonic) -> Harmonic {
        Harmonic::new(&self.d + &other.d, &self.c + &other.c)
    }

    pub fn sub(&self, other: &Harmonic) -> Harmonic {
        Harmonic::new(&self.d - &other.d, &self.c - &other.c)
    }

    pub fn neg(&self) -> Harmonic {
        Harmonic::new(-&self.d, -&self.c)
    }

    pub fn scale(&self, lambda: &Scalar) -> Harmonic {
        Harmonic::new(&self.d * lambda, &self.c * lambda)
    }
}

impl fmt::Display for Harmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})/k", self.d, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64, c: i64) -> Harmonic {
        Harmonic::new(Scalar::from_int(d), Scalar::from_int(c))
    }

    #[test]
    fn crossover_is_tight() {
        // 1/2 + 0/k vs 0 + 3/k: equal at k = 6, tail order from k = 7.
        let a = Harmonic::new(Scalar::ratio(1, 2), Scalar::zero());
        let b = h(0, 3);
        assert_eq!(a.crossover(&b), Index::from(6u8));
        assert_eq!(a.split_index(&b), Index::from(7u8));
        assert_eq!(h(1, 1).split_index(&h(0, 0)), Index::one());
        assert_eq!(a.eventual_cmp(&b), Ordering::Greater);
        for k in 7..200 {
            assert!(a.at(k) > b.at(k));
        }
        assert!(a.at(5) < b.at(5));
    }

    #[test]
    fn eventual_abs_flips_sign() {
        let (abs, n) = h(-1, 5).eventual_abs();
        assert_eq!(abs, h(1, -5));
        assert_eq!(n, Index::from(5u8));
        let (abs, n) = h(0, -2).eventual_abs();
        assert_eq!(abs, h(0, 2));
        assert_eq!(n, Index::default());
    }

    #[test]
    fn far_crossovers_are_exact() {
        let tiny = Harmonic::constant(&Scalar::inv_pow2(300) * &Scalar::from_int(3));
        let n = tiny.split_index(&h(0, 3));
        assert_eq!(n, (Index::one() << 300u32) + 1u8);
        assert!(tiny.at_index(&n) > h(0, 3).at_index(&n));
        let before = &n - 1u8;
        assert_eq!(tiny.at_index(&before), h(0, 3).at_index(&before));
    }
}
