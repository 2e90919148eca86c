use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::harmonic::{Harmonic, Index};
use crate::scalar::Scalar;

/// Leading entries shown densely by `Display`; longer prefixes print as
/// pieces.
const DENSE_DISPLAY: u64 = 64;

/// Longest finite range summed term by term when a closed form is missing.
const MAX_TERMWISE: u64 = 1 << 16;

fn one() -> Index {
    Index::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Piece {
    start: Index,
    h: Harmonic,
}

/// A real sequence that is piecewise affine-harmonic: on each of finitely
/// many index ranges it equals `k ↦ d + c/k` for some rationals `d, c`.
///
/// The class is closed under the vector and lattice operations: on a common
/// range two such functions cross at most once, so a meet or join splits a
/// range in at most two. Equality is extensional.
#[derive(Clone, Debug)]
pub struct SeqElement {
    /// Sorted by start; the first starts at 1 and the last runs forever.
    pieces: Vec<Piece>,
}

/// A maximal range on which two elements are both single harmonics.
struct Overlap<'a> {
    start: Index,
    end: Option<Index>,
    a: &'a Harmonic,
    b: &'a Harmonic,
}

impl SeqElement {
    /// Entries `prefix[k-1]` for `k <= prefix.len()`, then the tail.
    pub fn new(prefix: Vec<Scalar>, tail: Harmonic) -> Self {
        let points = prefix.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect();
        SeqElement::from_points(points, tail)
    }

    /// Entries given at sorted, distinct indices; the tail elsewhere.
    pub fn from_points(points: Vec<(usize, Scalar)>, tail: Harmonic) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0), "points must be sorted");
        let mut pieces = Vec::with_capacity(2 * points.len() + 1);
        let mut next: Index = one();
        for (k, v) in points {
            let k = Index::from(k);
            if k > next {
                pieces.push(Piece { start: next, h: tail.clone() });
            }
            next = &k + 1u8;
            pieces.push(Piece { start: k, h: Harmonic::constant(v) });
        }
        pieces.push(Piece { start: next, h: tail });
        SeqElement::normalized(pieces)
    }

    /// Pieces `(start, harmonic)`; starts must increase from 1.
    pub fn from_pieces(pieces: Vec<(Index, Harmonic)>) -> Result<Self> {
        let ok = pieces.first().is_some_and(|(s, _)| s.is_one()) && pieces.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(Error::InvalidArgument("piece starts must increase from 1".into()));
        }
        Ok(SeqElement::normalized(pieces.into_iter().map(|(start, h)| Piece { start, h }).collect()))
    }

    pub fn zero() -> Self {
        SeqElement::harmonic(Scalar::zero(), Scalar::zero())
    }

    /// `k ↦ d + c/k` everywhere.
    pub fn harmonic(d: Scalar, c: Scalar) -> Self {
        SeqElement { pieces: vec![Piece { start: one(), h: Harmonic::new(d, c) }] }
    }

    pub fn constant(d: Scalar) -> Self {
        SeqElement::harmonic(d, Scalar::zero())
    }

    /// Finitely supported element with the given leading entries.
    pub fn finite(prefix: Vec<Scalar>) -> Self {
        SeqElement::new(prefix, Harmonic::zero())
    }

    /// The `k`-th standard unit vector (1-indexed).
    pub fn unit(k: usize) -> Self {
        assert!(k >= 1, "unit vectors are 1-indexed");
        SeqElement::from_points(vec![(k, Scalar::one())], Harmonic::zero())
    }

    /// Pieces as `(start, end, harmonic)`; the last has no end.
    pub fn pieces(&self) -> impl Iterator<Item = (&Index, Option<Index>, &Harmonic)> + '_ {
        self.pieces.iter().enumerate().map(|(i, p)| (&p.start, self.end_of(i), &p.h))
    }

    fn end_of(&self, i: usize) -> Option<Index> {
        self.pieces.get(i + 1).map(|n| &n.start - 1u8)
    }

    /// The harmonic the sequence eventually follows.
    pub fn tail(&self) -> &Harmonic {
        &self.pieces.last().expect("at least one piece").h
    }

    /// First index of the final piece.
    pub fn tail_start(&self) -> &Index {
        &self.pieces.last().expect("at least one piece").start
    }

    /// The entries before [`Self::tail_start`].
    pub fn prefix(&self) -> Vec<Scalar> {
        let len = (self.tail_start() - 1u8).to_usize().expect("prefix fits in memory");
        self.entries(len)
    }

    fn piece_at(&self, k: &Index) -> &Piece {
        let i = self.pieces.partition_point(|p| &p.start <= k) - 1;
        &self.pieces[i]
    }

    /// Entry at index `k >= 1`.
    pub fn entry(&self, k: usize) -> Scalar {
        self.entry_at(&Index::from(k))
    }

    pub fn entry_at(&self, k: &Index) -> Scalar {
        assert!(*k >= one(), "sequence entries are 1-indexed");
        self.piece_at(k).h.at_index(k)
    }

    /// The first `len` entries.
    pub fn entries(&self, len: usize) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(len);
        let mut i = 0;
        for k in 1..=len as u64 {
            while i + 1 < self.pieces.len() && self.pieces[i + 1].start <= Index::from(k) {
                i += 1;
            }
            out.push(self.pieces[i].h.at(k));
        }
        out
    }

    /// Whether the element lies in c₀ (tail limit zero).
    pub fn is_c0(&self) -> bool {
        self.tail().d.is_zero()
    }

    pub fn is_zero_tail(&self) -> bool {
        self.tail().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.h.is_zero())
    }

    /// Index of the last entry before a zero tail.
    pub fn support_end(&self) -> Option<Index> {
        self.is_zero_tail().then(|| self.tail_start() - 1u8)
    }

    /// Canonical-enough form: single-index pieces are constants, and
    /// neighbours are merged whenever one harmonic covers both. The final
    /// piece is extended as far left as its harmonic reaches.
    fn normalized(mut pieces: Vec<Piece>) -> SeqElement {
        loop {
            let mut changed = false;
            for i in 0..pieces.len() {
                if let Some(next) = pieces.get(i + 1).map(|n| &n.start) {
                    if *next == &pieces[i].start + 1u8 && !pieces[i].h.c.is_zero() {
                        let v = pieces[i].h.at_index(&pieces[i].start);
                        pieces[i].h = Harmonic::constant(v);
                    }
                }
            }
            let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
            for (i, p) in pieces.iter().enumerate() {
                let last = i + 1 == pieces.len();
                let end = pieces.get(i + 1).map(|n| &n.start - 1u8);
                match out.last_mut() {
                    Some(prev) if prev.h == p.h => changed = true,
                    // A single index lying on the next harmonic joins it.
                    Some(prev) if &prev.start + 1u8 == p.start && p.h.at_index(&prev.start) == prev.h.d => {
                        prev.h = p.h.clone();
                        changed = true;
                    }
                    // A single index lying on the previous harmonic joins it.
                    Some(prev) if !last && end.as_ref() == Some(&p.start) && prev.h.at_index(&p.start) == p.h.d => {
                        changed = true;
                    }
                    // The last point of a longer range lying on the tail.
                    Some(prev)
                        if last
                            && &p.start - &prev.start >= Index::from(2u8)
                            && prev.h.at_index(&(&p.start - 1u8)) == p.h.at_index(&(&p.start - 1u8)) =>
                    {
                        out.push(Piece { start: &p.start - 1u8, h: p.h.clone() });
                        changed = true;
                    }
                    _ => out.push(p.clone()),
                }
            }
            pieces = out;
            if !changed {
                return SeqElement { pieces };
            }
        }
    }

    /// The common refinement of two piece lists.
    fn overlaps<'a>(&'a self, other: &'a SeqElement) -> Vec<Overlap<'a>> {
        let mut starts: Vec<&Index> = self.pieces.iter().chain(&other.pieces).map(|p| &p.start).collect();
        starts.sort_unstable();
        starts.dedup();
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(starts.len());
        for (n, &s) in starts.iter().enumerate() {
            while i + 1 < self.pieces.len() && self.pieces[i + 1].start <= *s {
                i += 1;
            }
            while j + 1 < other.pieces.len() && other.pieces[j + 1].start <= *s {
                j += 1;
            }
            let end = starts.get(n + 1).map(|&t| t - 1u8);
            out.push(Overlap { start: s.clone(), end, a: &self.pieces[i].h, b: &other.pieces[j].h });
        }
        out
    }

    /// The common refinement as `(start, end, self's harmonic, other's)`.
    pub fn overlapping<'a>(
        &'a self,
        other: &'a SeqElement,
    ) -> impl Iterator<Item = (Index, Option<Index>, &'a Harmonic, &'a Harmonic)> + 'a {
        self.overlaps(other).into_iter().map(|o| (o.start, o.end, o.a, o.b))
    }

    fn zip(&self, other: &SeqElement, f: impl Fn(&Harmonic, &Harmonic) -> Harmonic) -> SeqElement {
        let pieces = self.overlaps(other).into_iter().map(|o| Piece { start: o.start, h: f(o.a, o.b) }).collect();
        SeqElement::normalized(pieces)
    }

    fn map(&self, f: impl Fn(&Harmonic) -> Harmonic) -> SeqElement {
        SeqElement::normalized(self.pieces.iter().map(|p| Piece { start: p.start.clone(), h: f(&p.h) }).collect())
    }

    pub fn add(&self, other: &SeqElement) -> SeqElement {
        self.zip(other, Harmonic::add)
    }

    pub fn sub(&self, other: &SeqElement) -> SeqElement {
        self.zip(other, Harmonic::sub)
    }

    pub fn neg(&self) -> SeqElement {
        self.map(Harmonic::neg)
    }

    pub fn scale(&self, lambda: &Scalar) -> SeqElement {
        self.map(|h| h.scale(lambda))
    }

    /// Pointwise choice between two harmonics on every overlap, splitting
    /// where they cross. `pick_first(sign)` decides from the sign of `a - b`.
    fn select(&self, other: &SeqElement, pick_first: impl Fn(i32) -> bool) -> Result<SeqElement> {
        let mut pieces = Vec::new();
        for o in self.overlaps(other) {
            let diff = o.a.sub(o.b);
            let choose = |sign: i32| if pick_first(sign) { o.a.clone() } else { o.b.clone() };
            if diff.d.is_zero() {
                pieces.push(Piece { start: o.start, h: choose(diff.c.signum()) });
                continue;
            }
            let split = o.a.split_index(o.b);
            let late = diff.d.signum();
            if split > o.start && o.end.as_ref().is_none_or(|e| split <= *e) {
                pieces.push(Piece { start: o.start, h: choose(-late) });
                pieces.push(Piece { start: split, h: choose(late) });
            } else {
                let sign = if split <= o.start { late } else { -late };
                pieces.push(Piece { start: o.start, h: choose(sign) });
            }
        }
        Ok(SeqElement::normalized(pieces))
    }

    pub fn meet(&self, other: &SeqElement) -> Result<SeqElement> {
        self.select(other, |sign| sign <= 0)
    }

    pub fn join(&self, other: &SeqElement) -> Result<SeqElement> {
        self.select(other, |sign| sign >= 0)
    }

    pub fn abs(&self) -> Result<SeqElement> {
        self.join(&self.neg())
    }

    /// Smallest value of a harmonic over `[start, end]`; monotone in `k`, so
    /// an endpoint or the limit.
    fn piece_inf(start: &Index, end: Option<Index>, h: &Harmonic) -> (Scalar, bool) {
        let first = h.at_index(start);
        match end {
            Some(e) => {
                let last = h.at_index(&e);
                (first.min_of(last), true)
            }
            // The limit is approached but attained only by constants.
            None => {
                let attained = h.c.is_zero() || first <= h.d;
                (first.min_of(h.d.clone()), attained)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.pieces().all(|(s, e, h)| !Self::piece_inf(s, e, h).0.is_negative())
    }

    pub fn leq(&self, other: &SeqElement) -> Result<bool> {
        Ok(other.sub(self).is_positive())
    }

    pub fn sup_norm(&self) -> Scalar {
        self.pieces()
            .map(|(s, e, h)| {
                let first = h.at_index(s).abs();
                let other = match e {
                    Some(e) => h.at_index(&e).abs(),
                    None => h.d.abs(),
                };
                first.max_of(other)
            })
            .max()
            .expect("at least one piece")
    }

    pub fn l1_norm(&self) -> Result<Scalar> {
        if !self.is_zero_tail() {
            return Err(Error::NormUndefined(format!("l1 norm of {self}: tail does not vanish")));
        }
        let abs = self.abs()?;
        let mut total = Scalar::zero();
        for (s, e, h) in abs.pieces() {
            let Some(e) = e else { continue };
            total = &total + &range_sum(s, &e, h, &Harmonic::constant(Scalar::one()))?;
        }
        Ok(total)
    }

    /// `Σ_k self(k)·y(k)` for a finitely supported `y`.
    pub fn dot_finite(&self, y: &SeqElement) -> Result<Scalar> {
        if !y.is_zero_tail() {
            return Err(Error::InvalidArgument(format!("{y} is not finitely supported")));
        }
        let mut total = Scalar::zero();
        for o in self.overlaps(y) {
            let Some(end) = &o.end else { continue };
            if o.a.is_zero() || o.b.is_zero() {
                continue;
            }
            total = &total + &range_sum(&o.start, end, o.a, o.b)?;
        }
        Ok(total)
    }

    /// Every entry strictly positive.
    pub fn all_entries_positive(&self) -> bool {
        self.pieces().all(|(s, e, h)| {
            let (inf, attained) = Self::piece_inf(s, e, h);
            inf.is_positive() || (inf.is_zero() && !attained)
        })
    }

    /// Zero wherever `mask` vanishes, `self` elsewhere.
    pub fn restrict_to_support_of(&self, mask: &SeqElement) -> SeqElement {
        let zero = Harmonic::zero();
        let mut pieces = Vec::new();
        for o in self.overlaps(mask) {
            if o.b.is_zero() {
                pieces.push(Piece { start: o.start, h: zero.clone() });
                continue;
            }
            pieces.push(Piece { start: o.start.clone(), h: o.a.clone() });
            // A nonzero harmonic vanishes at most at one index.
            if let Some(r) = integer_root(o.b) {
                if r >= o.start && o.end.as_ref().is_none_or(|e| r <= *e) {
                    if r == o.start {
                        pieces.pop();
                    }
                    let next = &r + 1u8;
                    let inside = o.end.as_ref() != Some(&r);
                    pieces.push(Piece { start: r, h: zero.clone() });
                    if inside {
                        pieces.push(Piece { start: next, h: o.a.clone() });
                    }
                }
            }
        }
        SeqElement::normalized(pieces)
    }

    /// First index where the entry is nonzero; indices beyond `usize` are
    /// not reported.
    pub fn first_nonzero_index(&self) -> Option<usize> {
        for (s, e, h) in self.pieces() {
            if h.is_zero() {
                continue;
            }
            // At most one zero per piece, so the first or second index.
            let k = if h.at_index(s).is_zero() { s + 1u8 } else { s.clone() };
            if e.is_none_or(|e| k <= e) {
                return k.to_usize();
            }
        }
        None
    }

    pub fn to_f64_entries(&self, len: usize) -> Vec<f64> {
        self.entries(len).iter().map(Scalar::to_f64).collect()
    }

    /// Zero before index `k`, `self` from `k` on.
    pub fn zero_before(&self, k: &Index) -> SeqElement {
        let k = k.max(&one()).clone();
        let mut pieces = Vec::new();
        if !k.is_one() {
            pieces.push(Piece { start: one(), h: Harmonic::zero() });
        }
        pieces.push(Piece { start: k.clone(), h: self.piece_at(&k).h.clone() });
        pieces.extend(self.pieces.iter().filter(|p| p.start > k).cloned());
        SeqElement::normalized(pieces)
    }
}

/// The positive integer where `h` vanishes, if `h` is not identically zero.
fn integer_root(h: &Harmonic) -> Option<Index> {
    if h.d.is_zero() {
        return None;
    }
    let k = -(&h.c / &h.d);
    (k.is_integer() && k.is_positive()).then(|| k.floor_natural()).flatten()
}

/// `Σ_{k=s}^{e} a(k)·b(k)`, closed form when the cross terms vanish.
fn range_sum(s: &Index, e: &Index, a: &Harmonic, b: &Harmonic) -> Result<Scalar> {
    let len = e - s + 1u8;
    if a.c.is_zero() && b.c.is_zero() {
        return Ok(&(&a.d * &b.d) * &Scalar::from_biguint(&len));
    }
    let (Some(first), Some(last)) = (s.to_u64(), e.to_u64()) else {
        return Err(Error::Unsupported(format!("sum of ({a})·({b}) over {len} indices from {s}")));
    };
    if last - first >= MAX_TERMWISE {
        return Err(Error::Unsupported(format!("sum of ({a})·({b}) over {len} indices from {s}")));
    }
    Ok((first..=last).map(|k| &a.at(k) * &b.at(k)).sum())
}

impl PartialEq for SeqElement {
    fn eq(&self, other: &SeqElement) -> bool {
        self.pieces == other.pieces || self.sub(other).is_zero()
    }
}

impl Eq for SeqElement {}

impl Hash for SeqElement {
    /// The eventual harmonic is determined by the sequence, so hashing it
    /// agrees with extensional equality.
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tail().hash(state);
    }
}

impl fmt::Display for SeqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = self.tail();
        if self.tail_start() - 1u8 <= Index::from(DENSE_DISPLAY) {
            write!(f, "{{prefix=[")?;
            for (i, v) in self.prefix().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            return write!(f, "], d={}, c={}}}", tail.d, tail.c);
        }
        write!(f, "{{pieces=[")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", p.start, p.h.d, p.h.c)?;
        }
        write!(f, "]}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn canonical_form_trims_redundant_prefix() {
        let e = SeqElement::new(vec![q(1, 1), q(1, 2)], Harmonic::new(q(0, 1), q(1, 1)));
        assert!(e.prefix().is_empty());
        assert_eq!(e, SeqElement::harmonic(Scalar::zero(), Scalar::one()));
    }

    #[test]
    fn meet_of_harmonic_and_constant() {
        let e = SeqElement::harmonic(Scalar::zero(), Scalar::one());
        let half = SeqElement::constant(q(1, 2));
        let m = e.meet(&half).unwrap();
        assert_eq!(m.prefix(), vec![q(1, 2)]);
        assert_eq!(m.tail(), &Harmonic::new(Scalar::zero(), Scalar::one()));
        for k in 1..50 {
            assert_eq!(m.entry(k), e.entry(k).min_of(half.entry(k)));
        }
    }

    #[test]
    fn unit_vectors() {
        let e3 = SeqElement::unit(3);
        assert_eq!(e3.prefix(), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert!(e3.is_zero_tail());
        assert_eq!(e3.sup_norm(), Scalar::one());
    }

    #[test]
    fn norms() {
        let e = SeqElement::harmonic(Scalar::zero(), Scalar::one());
        assert_eq!(e.sup_norm(), Scalar::one());
        assert_eq!(SeqElement::finite(vec![q(5, 1)]).sup_norm(), q(5, 1));
        assert_eq!(SeqElement::finite(vec![q(1, 1), q(1, 2)]).l1_norm().unwrap(), q(3, 2));
        assert!(matches!(e.l1_norm(), Err(Error::NormUndefined(_))));
    }

    #[test]
    fn abs_handles_sign_change_in_tail() {
        // 1 - 3/k: negative for k < 3, zero at 3, positive after.
        let x = SeqElement::harmonic(Scalar::one(), q(-3, 1));
        let a = x.abs().unwrap();
        for k in 1..40 {
            assert_eq!(a.entry(k), x.entry(k).abs());
        }
        assert!(a.is_positive());
        assert!(!x.is_positive());
    }

    #[test]
    fn support_restriction() {
        let x = SeqElement::constant(Scalar::one());
        let mask = SeqElement::new(vec![q(0, 1), q(2, 1)], Harmonic::zero());
        let r = x.restrict_to_support_of(&mask);
        assert_eq!(r, SeqElement::finite(vec![q(0, 1), q(1, 1)]));
        // mask 1 - 3/k vanishes at k = 3 only
        let mask = SeqElement::harmonic(Scalar::one(), q(-3, 1));
        let r = x.restrict_to_support_of(&mask);
        assert_eq!(r.entry(3), Scalar::zero());
        assert_eq!(r.entry(4), Scalar::one());
        assert_eq!(r.entry(2), Scalar::one());
    }

    #[test]
    fn first_nonzero() {
        assert_eq!(SeqElement::unit(4).first_nonzero_index(), Some(4));
        assert_eq!(SeqElement::zero().first_nonzero_index(), None);
        let x = SeqElement::harmonic(Scalar::one(), q(-1, 1));
        assert_eq!(x.first_nonzero_index(), Some(2));
    }
}
