use super::RieszMap;
use crate::error::Result;
use crate::lattice::LatticeElement;
use crate::par::Execution;
use crate::scalar::Scalar;

/// Outcome of a pointwise comparison; the witness is the first failing
/// sample with both values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    pub witness: Option<(LatticeElement, Scalar, Scalar)>,
}

fn compare<P, Q>(
    p: &P,
    q: &Q,
    samples: &[LatticeElement],
    exec: Execution,
    ok: fn(&Scalar, &Scalar) -> bool,
) -> Result<Comparison>
where
    P: RieszMap + ?Sized,
    Q: RieszMap + ?Sized,
{
    let rows = exec.map(samples, |x| -> Result<Option<(LatticeElement, Scalar, Scalar)>> {
        let (a, b) = (p.eval(x)?, q.eval(x)?);
        Ok((!ok(&a, &b)).then(|| (x.clone(), a, b)))
    });
    for row in rows {
        if let Some(w) = row? {
            return Ok(Comparison { holds: false, witness: Some(w) });
        }
    }
    Ok(Comparison { holds: true, witness: None })
}

/// `p(x) >= q(x)` on every sample.
pub fn dominates<P, Q>(p: &P, q: &Q, samples: &[LatticeElement], exec: Execution) -> Result<Comparison>
where
    P: RieszMap + ?Sized,
    Q: RieszMap + ?Sized,
{
    compare(p, q, samples, exec, |a, b| a >= b)
}

/// `p(x) = q(x)` on every sample.
pub fn equals_pointwise<P, Q>(p: &P, q: &Q, samples: &[LatticeElement], exec: Execution) -> Result<Comparison>
where
    P: RieszMap + ?Sized,
    Q: RieszMap + ?Sized,
{
    compare(p, q, samples, exec, |a, b| a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudonorm::PseudonormExpr;

    #[test]
    fn parent_dominates_restriction() {
        let p = PseudonormExpr::sup();
        let q = p.clone().restrict(LatticeElement::ints(&[1, 1])).unwrap();
        let samples = vec![LatticeElement::ints(&[3, -1]), LatticeElement::ints(&[0, 0])];
        assert!(dominates(&p, &q, &samples, Execution::Sequential).unwrap().holds);
        let back = dominates(&q, &p, &samples, Execution::Sequential).unwrap();
        assert!(!back.holds);
        assert_eq!(back.witness.unwrap().0, samples[0]);
        assert!(equals_pointwise(&p, &p, &samples, Execution::Parallel).unwrap().holds);
    }
}
