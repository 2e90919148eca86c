//! Worked examples with hand-computed answers.

use riesz_core::convergence::{
    converges_to, lebesgue_probe, order_converges_monotone, uo_converges, Ambient, NetSpec, Policy, VerdictStatus,
};
use riesz_core::dualpair::{check_positive_dual_pair, uaw_topology, DualPair, Functional, Interpretation};
use riesz_core::lattice::{ideal_member, IdealCertificate, RefusalReason};
use riesz_core::pseudonorm::{check_axioms, NullSequence};
use riesz_core::report::Status;
use riesz_core::sampling::Sampler;
use riesz_core::syntax::{parse_element, parse_net, parse_pseudonorm, parse_topology};
use riesz_core::topology::{hausdorff_witness, tau_prime, CollectionSpec, Sufficiency, TopologySpec};
use riesz_core::{Execution, LatticeElement, NormTag, PseudonormExpr, Scalar, SeqElement, Space};

fn el(text: &str) -> LatticeElement {
    parse_element(text).unwrap()
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

fn n(a: i64) -> Scalar {
    Scalar::from_int(a)
}

fn e() -> LatticeElement {
    LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()))
}

fn eval(p: &str, x: &str) -> Scalar {
    parse_pseudonorm(p).unwrap().evaluate(&el(x)).unwrap()
}

fn sup_tau() -> TopologySpec {
    TopologySpec::base(vec![PseudonormExpr::sup()]).unwrap()
}

fn status(net: &NetSpec, limit: &LatticeElement, tau: &TopologySpec) -> VerdictStatus {
    converges_to(net, limit, tau, &Policy::default()).unwrap().status
}

#[test]
fn lattice_operations() {
    assert_eq!(el("[1,2]").meet(&el("[2,1]")).unwrap(), el("[1,1]"));
    assert_eq!(el("[-3,0,2]").abs().unwrap(), el("[3,0,2]"));
    let m = e().meet(&el("{prefix=[], d=1/2, c=0}")).unwrap();
    assert_eq!(m, el("{prefix=[1/2], d=0, c=1}"));
}

#[test]
fn norms() {
    assert_eq!(el("[3,-4,1]").sup_norm(), n(4));
    assert_eq!(e().sup_norm(), n(1));
    assert_eq!(el("{prefix=[5], d=0, c=0}").sup_norm(), n(5));
    assert_eq!(el("[1,-2,3]").l1_norm().unwrap(), n(6));
    assert_eq!(el("{prefix=[1,1/2], d=0, c=0}").l1_norm().unwrap(), q(3, 2));
    assert!(e().norm(NormTag::L1).is_err());
}

#[test]
fn ideal_membership() {
    let cert = ideal_member(&el("[0,3,0]"), &[el("[0,1,0]"), el("[1,1,0]")]).unwrap();
    assert_eq!(cert.constant(), Some(&q(3, 2)));
    match ideal_member(&el("[1,0]"), &[el("[0,1]")]).unwrap() {
        IdealCertificate::Refused(r) => {
            assert_eq!(r.index, 1);
            assert_eq!(r.reason, RefusalReason::OutsideSupport);
        }
        other => panic!("expected a refusal, got {other}"),
    }
    let two_e = el("{prefix=[], d=0, c=2}");
    assert_eq!(ideal_member(&two_e, &[e()]).unwrap().constant(), Some(&n(2)));
}

#[test]
fn units() {
    assert!(el("[1,1,1]").is_strong_unit().unwrap());
    assert!(!e().is_strong_unit().unwrap());
    assert!(e().is_quasi_interior().unwrap());
    assert!(!el("{prefix=[0], d=0, c=1}").is_quasi_interior().unwrap());
}

#[test]
fn pseudonorm_values() {
    assert_eq!(eval("restrict(norm(sup), [2,2,2])", "[3,-1,0]"), n(2));
    let p_e = PseudonormExpr::sup().restrict(e()).unwrap();
    for k in [1usize, 2, 3, 17, 1000] {
        let x = LatticeElement::Seq(SeqElement::unit(k));
        assert_eq!(p_e.evaluate(&x).unwrap(), Scalar::recip_index(k as u64));
    }
    assert_eq!(eval("usup(norm(sup), [[1,0],[0,1]])", "[2,3]"), n(1));
    assert_eq!(eval("restrict(norm(sup), [1,1])", "[5,0]"), n(1));
    assert_eq!(eval("restrict(norm(l1), [0,0,0])", "[4,-2,7]"), n(0));
    assert_eq!(eval("restrict(norm(l1), [5,5,5])", "[4,-2,1]"), n(7));
}

#[test]
fn unbounded_sup_reductions() {
    let mut s = Sampler::new(12);
    let sp = Space::Coord(3);
    for _ in 0..20 {
        let p = s.expr(&sp, 2);
        let x = s.element(&sp);
        let a = s.positive_element(&sp);
        let b = a.add(&s.positive_element(&sp)).unwrap();
        let v = |family: Vec<LatticeElement>| p.clone().unbounded_sup(family).unwrap().evaluate(&x).unwrap();
        assert_eq!(v(vec![x.abs().unwrap()]), p.evaluate(&x).unwrap());
        assert_eq!(v(vec![a.clone()]), p.clone().restrict(a.clone()).unwrap().evaluate(&x).unwrap());
        assert_eq!(v(vec![a, b.clone()]), p.clone().restrict(b).unwrap().evaluate(&x).unwrap());
    }
    assert!(parse_pseudonorm("usup(norm(sup), [])").is_err());
    assert!(parse_element("[1, 1/0]").is_err());
}

#[test]
fn squared_norm_fails_the_triangle_inequality() {
    let square = riesz_core::pseudonorm::FnMap::new("sup^2", |x: &LatticeElement| {
        let s = x.sup_norm();
        Ok(&s * &s)
    });
    let xs = vec![el("[1,0]"), el("[0,1]"), el("[1,1]"), el("[-1,2]")];
    let r = check_axioms(&square, &xs, &NullSequence::BATTERY, 100, Execution::Sequential).unwrap();
    assert!(!r.condition_passed(3));
    let xs = Sampler::new(4).elements(&Space::Coord(3), 30);
    let p = parse_pseudonorm("restrict(norm(sup), [1,2,3])").unwrap();
    assert!(check_axioms(&p, &xs, &NullSequence::BATTERY, 1000, Execution::Sequential).unwrap().passed());
}

#[test]
fn probe_sets() {
    let tau = sup_tau();
    let strong = tau_prime(&tau, &[el("[1,1,1]")]).unwrap();
    assert_eq!(strong.sufficiency(), Some(Sufficiency::StrongUnit));
    let c0 = tau_prime(&tau, &[e()]).unwrap();
    assert_eq!(c0.sufficiency(), Some(Sufficiency::QuasiInteriorC0));
    assert!(tau_prime(&tau, &[el("[0,0]")]).is_err());
}

#[test]
fn product_members_act_on_blocks() {
    let tau = parse_topology("prod(tau(norm(sup), space=rn:2), tau(norm(l1), space=rn:3))").unwrap();
    let x = LatticeElement::Product(vec![el("[1,2]"), el("[0,0,5]")]);
    let values: Vec<Scalar> = tau.members().iter().map(|m| m.evaluate(&x).unwrap()).collect();
    assert_eq!(values, vec![n(2), n(5)]);
}

#[test]
fn hausdorff_witnesses() {
    assert_eq!(hausdorff_witness(&sup_tau(), &el("[0,2]")).unwrap().value, n(2));
    let unit = LatticeElement::Seq(SeqElement::unit(7));
    assert_eq!(hausdorff_witness(&sup_tau(), &unit).unwrap().value, n(1));
    assert!(hausdorff_witness(&sup_tau(), &el("[0,0]")).is_err());
}

#[test]
fn net_values() {
    assert_eq!(NetSpec::UnitWalk.value_at(3).unwrap(), el("{prefix=[0,0,1], d=0, c=0}"));
    let net = parse_net("scaled([1,1], rate=1/k)").unwrap();
    assert_eq!(net.value_at(4).unwrap(), el("[1/4,1/4]"));
    let v = NetSpec::sin2d().value_at_f64(1).unwrap();
    assert!((v[0] - (2.0 + 1f64.sin())).abs() < 1e-12 && v[1] == 0.0);
}

#[test]
fn topological_verdicts() {
    let zero = Space::Seq.zero();
    let walk = NetSpec::UnitWalk;
    let probe = tau_prime(&sup_tau(), &[e()]).unwrap();
    assert_eq!(status(&walk, &zero, &probe), VerdictStatus::ConvergesExact);
    let norm = sup_tau().with_space(Space::Seq).unwrap();
    assert!(matches!(status(&walk, &zero, &norm), VerdictStatus::Refuted { lower_bound, .. } if lower_bound == n(1)));
    let net = parse_net("scaled([1,1,1], rate=1/k)").unwrap();
    let l1 = parse_topology("tau(norm(sup), norm(l1))").unwrap();
    assert_eq!(status(&net, &el("[0,0,0]"), &l1), VerdictStatus::ConvergesExact);
}

#[test]
fn order_verdicts() {
    let policy = Policy::default();
    let up = parse_net("monup(limit=[1,2,3], rate=1/k)").unwrap();
    assert_eq!(order_converges_monotone(&up, &el("[1,2,3]"), &policy).unwrap().status, VerdictStatus::ConvergesExact);
    let down = parse_net("scaled([2,0,1], rate=1/2^k)").unwrap();
    assert_eq!(order_converges_monotone(&down, &el("[0,0,0]"), &policy).unwrap().status, VerdictStatus::ConvergesExact);
    assert!(order_converges_monotone(&NetSpec::UnitWalk, &Space::Seq.zero(), &policy).is_err());

    let zero = Space::Seq.zero();
    let uo = uo_converges(&NetSpec::UnitWalk, &zero, &[e()], Ambient::C0, &policy).unwrap();
    assert_eq!(uo.status, VerdictStatus::ConvergesExact);
    let x = el("[3,-1]");
    let constant = parse_net("table([[3,-1]]; tail=const)").unwrap();
    let uo = uo_converges(&constant, &x, &[el("[1,0]"), el("[5,5]")], Ambient::Full, &policy).unwrap();
    assert_eq!(uo.status, VerdictStatus::ConvergesExact);
}

#[test]
fn lebesgue_evidence() {
    let policy = Policy::default();
    let tau = sup_tau().with_space(Space::Coord(3)).unwrap();
    let nets = [parse_net("scaled([1,2,3], rate=1/k)").unwrap()];
    let r = lebesgue_probe(&tau, &[el("[1,1,1]")], &nets, &policy).unwrap();
    assert!(r.lebesgue_tau() && r.lebesgue_tau_prime() && r.biconditional_holds());
    let seq = sup_tau().with_space(Space::Seq).unwrap();
    let nets = [NetSpec::scaled(e(), riesz_core::convergence::Rate::Harmonic)];
    assert!(lebesgue_probe(&seq, &[e()], &nets, &policy).unwrap().biconditional_holds());
    let constant = [parse_net("scaled([1,1,1], rate=const)").unwrap()];
    assert!(lebesgue_probe(&tau, &[el("[1,1,1]")], &constant, &policy).is_err());
}

#[test]
fn pairings() {
    let r3 = DualPair::standard(Space::Coord(3));
    let y = Functional::new(el("[1,0,1]")).unwrap();
    assert_eq!(r3.apply(&el("[1,2,3]"), &y).unwrap(), n(4));
    let seq = DualPair::standard(Space::Seq);
    let third = Functional::unit(&Space::Seq, 3).unwrap();
    assert_eq!(seq.apply(&e(), &third).unwrap(), q(1, 3));
    let zero = Functional::new(Space::Seq.zero()).unwrap();
    assert_eq!(seq.apply(&e(), &zero).unwrap(), n(0));
}

#[test]
fn dual_pair_checks() {
    let samples = [el("[1,0,0]"), el("[0,2,0]"), el("[1,-1,3]")];
    let rows = check_positive_dual_pair(&DualPair::standard(Space::Coord(3)), &samples).unwrap();
    assert!(rows.iter().all(|r| r.status == Status::Pass));
    let second = rows.iter().find(|r| r.subject.ends_with("x = [0,2,0]")).unwrap();
    assert!(second.computed.contains("y = [0,1,0]") && second.computed.ends_with("T(x,y) = 2"));
    let rows = check_positive_dual_pair(&DualPair::zeroed(Space::Coord(3)), &samples).unwrap();
    assert!(rows.iter().any(|r| r.paper_ref == "separation" && r.status == Status::Fail));
}

#[test]
fn dual_atoms() {
    assert_eq!(eval("dual(a=[1,1], y=[1,1])", "[3,-2]"), n(2));
    assert_eq!(eval("dual(a=[1,1], y=[1,1])", "[0,0]"), n(0));
    assert_eq!(eval("absw([1,-1,0])", "[2,3,9]"), n(5));
    assert_eq!(eval("absw([0,0,0])", "[2,3,9]"), n(0));
    assert_eq!(eval("absw([4,1,-2])", "[0,0,0]"), n(0));
    let xs = Sampler::new(6).elements(&Space::Coord(2), 30);
    let p = parse_pseudonorm("dual(a=[1,1], y=[1,1])").unwrap();
    assert!(check_axioms(&p, &xs, &NullSequence::BATTERY, 1000, Execution::Sequential).unwrap().passed());
}

#[test]
fn unbounded_absolute_weak_readings() {
    let pair = DualPair::standard(Space::Coord(2));
    let e0 = [el("[1,1]")];
    let f0 = [Functional::new(el("[1,0]")).unwrap()];
    let a = CollectionSpec::new(vec![vec![el("[1,1]")]]).unwrap();
    let xs = Sampler::new(7).elements(&Space::Coord(2), 30);
    for interp in Interpretation::BOTH {
        let tau = uaw_topology(&pair, &e0, &f0, &a, interp).unwrap();
        assert_eq!(tau.members().len(), 1);
        let m = &tau.members()[0];
        assert_eq!(m.evaluate(&el("[5,5]")).unwrap(), n(1), "{interp}");
        assert!(check_axioms(m, &xs, &NullSequence::BATTERY, 1000, Execution::Sequential).unwrap().passed());
    }
}

#[test]
fn literals_parse() {
    for x in ["[3,-1,1/2]", "{prefix=[1,1/2], d=0, c=1}", "{pieces=[[1,0,0],[500,1,0],[501,0,0]]}", "([1,2],[0,0,5])"] {
        parse_element(x).unwrap();
    }
    for p in ["absw([1,-1,0])", "dual(a=[1,1], y=[1,1])", "usup(norm(sup),[[1,0],[0,1]])"] {
        parse_pseudonorm(p).unwrap();
    }
    for t in [
        "tau(norm(sup), norm(l1))",
        "u(tau(norm(sup)), AA=[[[1,1]]])",
        "tauprime(tau(norm(sup)), probes=[[1,1,1]])",
        "prod(tau(norm(sup), space=rn:2), tau(norm(l1), space=rn:3))",
    ] {
        parse_topology(t).unwrap();
    }
    for n in [
        "unitwalk",
        "scaled([1,1], rate=1/k)",
        "monup(limit=[1,2], rate=1/2^k)",
        "table([[1,0],[0,1]]; tail=zero)",
        "sin2d",
    ] {
        parse_net(n).unwrap();
    }
}
