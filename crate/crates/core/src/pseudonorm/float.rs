use super::PseudonormExpr;
use crate::dualpair::Pairing;
use crate::error::{Error, Result};
use crate::lattice::NormTag;

pub(super) fn evaluate(p: &PseudonormExpr, x: &[f64]) -> Result<f64> {
    if let Some(space) = p.space() {
        if space.dim() != Some(x.len()) {
            return Err(Error::InvalidArgument(format!(
                "float evaluation of {p} needs a coordinate vector of {space}"
            )));
        }
    }
    eval(p, x)
}

fn eval(p: &PseudonormExpr, x: &[f64]) -> Result<f64> {
    Ok(match p {
        PseudonormExpr::Norm(NormTag::Sup) => x.iter().fold(0.0, |m, v| m.max(v.abs())),
        PseudonormExpr::Norm(NormTag::L1) => x.iter().map(|v| v.abs()).sum(),
        PseudonormExpr::Norm(NormTag::Euclid) => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        PseudonormExpr::Restrict { inner, bound } => {
            let u = bound.to_f64_coords()?;
            eval(inner, &meet_abs(x, &u))?
        }
        PseudonormExpr::UnboundedSup { inner, family } => {
            let mut best = 0.0f64;
            for a in family {
                best = best.max(eval(inner, &meet_abs(x, &a.to_f64_coords()?))?);
            }
            best
        }
        PseudonormExpr::Dual { pair, anchor, functional } => match pair.pairing {
            Pairing::Zero => 0.0,
            Pairing::Standard => {
                let a: Vec<f64> = anchor.to_f64_coords()?.iter().map(|v| v.abs()).collect();
                let y = functional.element().to_f64_coords()?;
                meet_abs(x, &a).iter().zip(&y).map(|(s, t)| s * t.abs()).sum()
            }
        },
        PseudonormExpr::AbsWeak { pair, functional } => match pair.pairing {
            Pairing::Zero => 0.0,
            Pairing::Standard => {
                let f = functional.element().to_f64_coords()?;
                x.iter().zip(&f).map(|(s, t)| s.abs() * t.abs()).sum()
            }
        },
        PseudonormExpr::Project { .. } => {
            return Err(Error::Unsupported("float evaluation on product spaces".into()));
        }
    })
}

fn meet_abs(x: &[f64], u: &[f64]) -> Vec<f64> {
    x.iter().zip(u).map(|(a, b)| a.abs().min(*b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeElement;

    #[test]
    fn euclid_and_restrict() {
        let e = PseudonormExpr::norm(NormTag::Euclid);
        assert!((e.evaluate_f64(&[3.0, -4.0]).unwrap() - 5.0).abs() < 1e-12);
        let r = e.restrict(LatticeElement::ints(&[1, 0])).unwrap();
        assert!((r.evaluate_f64(&[3.0, -4.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(r.evaluate_f64(&[1.0]).is_err());
    }

    #[test]
    fn agrees_with_exact_evaluation() {
        let p = PseudonormExpr::sup().unbounded_sup(vec![LatticeElement::ints(&[2, 1])]).unwrap();
        let x = LatticeElement::ints(&[3, -1]);
        let exact = p.evaluate(&x).unwrap().to_f64();
        assert_eq!(p.evaluate_f64(&x.to_f64_coords().unwrap()).unwrap(), exact);
    }
}
