//! Brute-force pointwise oracles shared by the integration tests.
#![allow(dead_code)]

use riesz_core::dualpair::Pairing;
use riesz_core::lattice::LatticeElement;
use riesz_core::{NormTag, PseudonormExpr, Scalar};

/// Indices expanded per sequence. Sampled tails cross below index 150, so
/// past this point every expanded sequence is monotone.
pub const DENSE_LEN: usize = 400;

/// An element spelled out entry by entry: coordinates, or the first
/// [`DENSE_LEN`] sequence entries together with the limit.
#[derive(Clone, Debug)]
pub struct Dense {
    pub entries: Vec<Scalar>,
    pub limit: Option<Scalar>,
}

impl Dense {
    pub fn of(x: &LatticeElement) -> Dense {
        match x {
            LatticeElement::Coord(v) => Dense { entries: v.coords().to_vec(), limit: None },
            LatticeElement::Seq(s) => Dense { entries: s.entries(DENSE_LEN), limit: Some(s.tail().d.clone()) },
            LatticeElement::Product(_) => panic!("products are expanded block by block"),
        }
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Dense {
        Dense { entries: self.entries.iter().map(&f).collect(), limit: self.limit.as_ref().map(f) }
    }

    fn zip(&self, other: &Dense, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Dense {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        let limit = match (&self.limit, &other.limit) {
            (Some(a), Some(b)) => Some(f(a, b)),
            _ => None,
        };
        Dense { entries, limit }
    }

    pub fn abs(&self) -> Dense {
        self.map(Scalar::abs)
    }

    pub fn meet(&self, other: &Dense) -> Dense {
        self.zip(other, |a, b| a.clone().min_of(b.clone()))
    }

    pub fn sup(&self) -> Scalar {
        let head = self.entries.iter().map(Scalar::abs).max().unwrap_or_else(Scalar::zero);
        match &self.limit {
            Some(l) => head.max_of(l.abs()),
            None => head,
        }
    }

    /// `Σ |x_k|`; only meaningful when everything past the expansion is zero.
    pub fn l1(&self) -> Scalar {
        self.entries.iter().map(Scalar::abs).sum()
    }

    pub fn dot(&self, y: &Dense) -> Scalar {
        self.entries.iter().zip(&y.entries).map(|(a, b)| a * b).sum()
    }
}

/// Evaluate `p` at `x` by expanding every node into explicit pointwise
/// arithmetic on [`Dense`] vectors.
pub fn oracle(p: &PseudonormExpr, x: &LatticeElement) -> Scalar {
    eval(p, &Dense::of(x))
}

fn eval(p: &PseudonormExpr, x: &Dense) -> Scalar {
    match p {
        PseudonormExpr::Norm(NormTag::Sup) => x.sup(),
        PseudonormExpr::Norm(NormTag::L1) => x.l1(),
        PseudonormExpr::Norm(NormTag::Euclid) => panic!("the oracle is exact only"),
        PseudonormExpr::Restrict { inner, bound } => eval(inner, &x.abs().meet(&Dense::of(bound))),
        PseudonormExpr::UnboundedSup { inner, family } => {
            family.iter().map(|a| eval(inner, &x.abs().meet(&Dense::of(a)))).max().expect("nonempty family")
        }
        PseudonormExpr::Dual { pair, anchor, functional } => match pair.pairing {
            Pairing::Zero => Scalar::zero(),
            Pairing::Standard => {
                let m = x.abs().meet(&Dense::of(anchor).abs());
                m.dot(&Dense::of(functional.element()).abs())
            }
        },
        PseudonormExpr::AbsWeak { pair, functional } => match pair.pairing {
            Pairing::Zero => Scalar::zero(),
            Pairing::Standard => x.abs().dot(&Dense::of(functional.element()).abs()),
        },
        PseudonormExpr::Project { .. } => panic!("the oracle covers single carriers"),
    }
}

/// `|b| <= K·Σ gens` checked entry by entry, limits included.
pub fn dominated(b: &LatticeElement, k: &Scalar, gens: &[LatticeElement]) -> bool {
    let b = Dense::of(b).abs();
    let mut sum = Dense::of(&gens[0]).map(|_| Scalar::zero());
    for g in gens {
        sum = sum.zip(&Dense::of(g), |a, c| a + c);
    }
    let bound = sum.map(|v| k * v);
    let le = |a: &Scalar, c: &Scalar| a <= c;
    b.entries.iter().zip(&bound.entries).all(|(a, c)| le(a, c))
        && match (&b.limit, &bound.limit) {
            (Some(a), Some(c)) => le(a, c),
            _ => true,
        }
}
