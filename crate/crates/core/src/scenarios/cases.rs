use super::verdict_claim;
use crate::convergence::{
    converges_to, lebesgue_probe, order_converges, uo_converges, Ambient, NetSpec, Policy, Rate, TableTail, Verdict,
    VerdictStatus,
};
use crate::dualpair::{ideal_invariance_check, DualPair, Functional, Interpretation};
use crate::error::Result;
use crate::lattice::{LatticeElement, NormTag, SeqElement, Space};
use crate::pseudonorm::{index_grid, PseudonormExpr};
use crate::report::{Row, Status};
use crate::sampling::Sampler;
use crate::scalar::Scalar;
use crate::topology::{
    family_equal, hausdorff_witness, ideal_equivalence_check, product_collection, product_topology, tau_prime,
    unbounded_topology, CollectionSpec, Sufficiency, TopologySpec,
};

fn base(tags: &[NormTag], space: Space) -> Result<TopologySpec> {
    TopologySpec::base(tags.iter().map(|t| PseudonormExpr::norm(*t)).collect())?.with_space(space)
}

fn harmonic() -> LatticeElement {
    LatticeElement::Seq(SeqElement::harmonic(Scalar::zero(), Scalar::one()))
}

fn seq(prefix: &[i64], d: i64, c: i64) -> LatticeElement {
    LatticeElement::Seq(SeqElement::new(
        prefix.iter().map(|v| Scalar::from_int(*v)).collect(),
        crate::lattice::Harmonic::new(Scalar::from_int(d), Scalar::from_int(c)),
    ))
}

fn status_claim(subject: impl Into<String>, label: &str, expected: &str, v: &Verdict, ok: bool) -> Row {
    Row::claim(subject, label, expected, v.to_string(), ok)
}

fn is_exact_convergence(v: &Verdict) -> bool {
    v.status == VerdictStatus::ConvergesExact
}

fn is_refuted(v: &Verdict) -> bool {
    matches!(v.status, VerdictStatus::Refuted { .. })
}

pub(super) fn c0_uo_not_o(policy: &Policy, _seed: u64) -> Result<Vec<Row>> {
    let net = NetSpec::UnitWalk;
    let zero = Space::Seq.zero();
    let probes = [harmonic(), seq(&[1, 2, 3], 0, 0), seq(&[], 0, 5), seq(&[7], 0, 1)];
    let uo = uo_converges(&net, &zero, &probes, Ambient::C0, policy)?;
    let o = order_converges(&net, &zero, Ambient::C0, policy)?;
    let subject = "unitwalk -> 0 in c0";
    let mut rows = vec![
        status_claim(subject, "unit vectors are uo-convergent", "converges_exact", &uo, is_exact_convergence(&uo)),
        status_claim(subject, "unit vectors are not o-convergent", "refuted", &o, is_refuted(&o)),
    ];
    let full = order_converges(&net, &zero, Ambient::Full, policy)?;
    rows.push(Row::new(
        "unitwalk -> 0 with constant-tail dominators allowed",
        "order convergence outside c0",
        "context only",
        full.to_string(),
        Status::Info,
    ));
    Ok(rows)
}

pub(super) fn c0_harmonic_probe(policy: &Policy, _seed: u64) -> Result<Vec<Row>> {
    let e = harmonic();
    let tau = base(&[NormTag::Sup], Space::Seq)?;
    let p_e = PseudonormExpr::sup().restrict(e.clone())?;
    let n = policy.horizon;
    let checked = policy.exec.map_range(1..n as usize + 1, |k| {
        p_e.evaluate(&LatticeElement::Seq(SeqElement::unit(k)))
            .map(|v| (v != Scalar::recip_index(k as u64)).then_some(k))
    });
    let mut first_bad = None;
    for r in checked {
        if let Some(k) = r? {
            first_bad.get_or_insert(k);
        }
    }
    let mut rows = vec![Row::invariant(
        format!("restrict(norm(sup), e) at e_k, 1 <= k <= {n}"),
        "values equal 1/k",
        match first_bad {
            None => format!("1/k at all {n} indices"),
            Some(k) => format!("mismatch at k = {k}"),
        },
        first_bad.is_none(),
    )];

    let net = NetSpec::UnitWalk;
    let zero = Space::Seq.zero();
    let under_e = converges_to(&net, &zero, &tau_prime(&tau, &[e.clone()])?, policy)?;
    rows.push(status_claim(
        "unitwalk under probe e",
        "convergence against e",
        "converges_exact",
        &under_e,
        is_exact_convergence(&under_e),
    ));
    let ones = Space::Seq.ones();
    let under_one = converges_to(&net, &zero, &tau_prime(&tau, &[ones])?, policy)?;
    rows.push(status_claim(
        "unitwalk under probe 1",
        "constant probe sees the norm",
        "refuted",
        &under_one,
        is_refuted(&under_one),
    ));
    let norm = converges_to(&net, &zero, &tau, policy)?;
    let all_one = norm.rows.iter().all(|r| r.trace.iter().all(|(_, v)| v.to_f64() == 1.0));
    rows.push(status_claim(
        "unitwalk in norm",
        "norm convergence fails, values 1",
        "refuted, values 1",
        &norm,
        is_refuted(&norm) && all_one,
    ));

    rows.push(Row::claim(
        format!("e = {e}"),
        "e is not a strong unit",
        "false",
        e.is_strong_unit()?.to_string(),
        !e.is_strong_unit()?,
    ));
    let suff = tau_prime(&tau, &[e.clone()])?.sufficiency();
    rows.push(Row::claim(
        format!("e = {e}"),
        "e is quasi-interior",
        "quasi-interior (c0 part)",
        suff.map_or("none".to_string(), |s| s.to_string()),
        e.is_quasi_interior()? && suff == Some(Sufficiency::QuasiInteriorC0),
    ));

    let richer = [e.clone(), seq(&[5], 0, 0), seq(&[], 0, 3), seq(&[0, 1], 0, 0)];
    let single = tau_prime(&tau, &[e.clone()])?;
    let many = tau_prime(&tau, &richer)?;
    let nets: Vec<(NetSpec, LatticeElement)> = vec![
        (NetSpec::UnitWalk, zero.clone()),
        (NetSpec::scaled(seq(&[1, 1, 1], 0, 0), Rate::Harmonic), zero.clone()),
        (NetSpec::scaled(e.clone(), Rate::Constant), zero.clone()),
        (NetSpec::scaled(seq(&[2], 0, 1), Rate::Geometric), zero.clone()),
        (NetSpec::table(vec![seq(&[0, 0, 4], 0, 0)], TableTail::Repeat)?, zero),
    ];
    for (net, limit) in &nets {
        let a = converges_to(net, limit, &single, policy)?;
        let b = converges_to(net, limit, &many, policy)?;
        rows.push(Row::claim(
            format!("{net} -> {limit}"),
            "probe e agrees with a richer probe set",
            "same verdict",
            format!("{{e}}: {}; richer: {}", a.status, b.status),
            a.converges() == b.converges(),
        ));
    }
    Ok(rows)
}

fn random_rate(s: &mut Sampler) -> Rate {
    [Rate::Harmonic, Rate::Geometric, Rate::Constant][s.index(3)]
}

pub(super) fn finite_dim_strong_unit(policy: &Policy, seed: u64) -> Result<Vec<Row>> {
    let space = Space::Coord(5);
    let tau = base(&[NormTag::Sup], space.clone())?;
    let unit = space.ones();
    let prime = tau_prime(&tau, &[unit.clone()])?;
    let mut s = Sampler::new(seed);
    let mut nets = Vec::with_capacity(100);
    for _ in 0..100 {
        let v = s.element(&space);
        let rate = random_rate(&mut s);
        let limit = if s.coin(0.3) { v.clone() } else { space.zero() };
        nets.push((NetSpec::scaled(v, rate), limit));
    }
    let verdicts = policy.exec.try_map(&nets, |(net, limit)| {
        Ok((converges_to(net, limit, &tau, policy)?, converges_to(net, limit, &prime, policy)?))
    })?;
    let mut rows = vec![Row::claim(
        format!("{prime}"),
        "strong-unit probe is sufficient",
        "strong unit",
        prime.sufficiency().map_or("none".into(), |s| s.to_string()),
        prime.sufficiency() == Some(Sufficiency::StrongUnit),
    )];
    let agree = verdicts.iter().filter(|(a, b)| a.status.report_status() == b.status.report_status()).count();
    let converging = verdicts.iter().filter(|(a, _)| a.converges()).count();
    rows.push(Row::claim(
        format!("100 random scaled nets in {space}, seed {seed}"),
        "tau and tau' agree",
        "100/100",
        format!("{agree}/100 ({converging} converge)"),
        agree == 100,
    ));
    for ((net, limit), (a, b)) in nets.iter().zip(&verdicts) {
        if a.status.report_status() != b.status.report_status() {
            rows.push(Row::claim(
                format!("{net} -> {limit}"),
                "tau and tau' agree",
                a.to_string(),
                b.to_string(),
                false,
            ));
        }
    }
    Ok(rows)
}

pub(super) fn increasing_net(policy: &Policy, seed: u64) -> Result<Vec<Row>> {
    let mut s = Sampler::new(seed);
    let mut rows = Vec::new();
    let cases: [(Space, usize); 2] = [(Space::Coord(3), 40), (Space::Seq, 10)];
    let mut agree = 0;
    let mut total = 0;
    let mut identity_ok = true;
    for (space, count) in cases {
        let tags: &[NormTag] = if space == Space::Seq { &[NormTag::Sup] } else { &[NormTag::Sup, NormTag::L1] };
        let tau = base(tags, space.clone())?;
        for _ in 0..count {
            let limit = s.positive_element(&space);
            if limit.is_zero() {
                continue;
            }
            let rate = random_rate(&mut s);
            let net = NetSpec::monotone_up(limit.clone(), rate);
            let twice = limit.abs()?.scale(&Scalar::from_int(2));
            let prime = tau_prime(&tau, &[twice.clone()])?;
            let a = converges_to(&net, &limit, &tau, policy)?;
            let b = converges_to(&net, &limit, &prime, policy)?;
            total += 1;
            if a.converges() == b.converges() {
                agree += 1;
            } else {
                rows.push(Row::claim(format!("{net} -> {limit}"), "tau iff tau'", a.to_string(), b.to_string(), false));
            }
            for k in index_grid(policy.horizon) {
                let d = net.value_at(k)?.sub(&limit)?.abs()?;
                let met = d.meet(&twice)?;
                for p in tau.members() {
                    if p.evaluate(&met)? != p.evaluate(&d)? {
                        identity_ok = false;
                        rows.push(Row::invariant(
                            format!("{net}, k = {k}, {p}"),
                            "p(|x_k - x| ^ 2|x|) = p(|x_k - x|)",
                            "differs",
                            false,
                        ));
                    }
                }
            }
        }
    }
    rows.insert(
        0,
        Row::claim(
            format!("{total} increasing nets, seed {seed}"),
            "increasing nets: tau iff tau'",
            format!("{total}/{total}"),
            format!("{agree}/{total}"),
            agree == total,
        ),
    );
    rows.insert(
        1,
        Row::invariant(
            format!("{total} increasing nets at {} indices each", index_grid(policy.horizon).len()),
            "p(|x_k - x| ^ 2|x|) = p(|x_k - x|)",
            if identity_ok { "equal at every index" } else { "differs" },
            identity_ok,
        ),
    );
    Ok(rows)
}

pub(super) fn lebesgue(policy: &Policy, _seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let r3 = Space::Coord(3);
    let families: Vec<(TopologySpec, Vec<LatticeElement>, Vec<NetSpec>)> = vec![
        (
            base(&[NormTag::Sup, NormTag::L1], r3.clone())?,
            vec![r3.ones()],
            vec![
                NetSpec::scaled(LatticeElement::ints(&[1, 2, 3]), Rate::Harmonic),
                NetSpec::scaled(LatticeElement::ints(&[0, 5, 1]), Rate::Geometric),
                NetSpec::table(
                    vec![LatticeElement::ints(&[3, 3, 3]), LatticeElement::ints(&[1, 2, 0])],
                    TableTail::Zero,
                )?,
            ],
        ),
        (
            base(&[NormTag::Sup], Space::Seq)?,
            vec![harmonic()],
            vec![
                NetSpec::scaled(harmonic(), Rate::Harmonic),
                NetSpec::scaled(seq(&[4, 1], 0, 0), Rate::Geometric),
                NetSpec::scaled(seq(&[], 2, 1), Rate::Harmonic),
            ],
        ),
    ];
    for (tau, probes, nets) in families {
        let report = lebesgue_probe(&tau, &probes, &nets, policy)?;
        for r in &report.rows {
            rows.push(Row::new(
                format!("{} under {}", r.net, report.tau),
                "decreasing null net",
                "context only",
                format!("tau: {}; tau': {}", r.under_tau.status, r.under_tau_prime.status),
                Status::Info,
            ));
        }
        rows.push(Row::claim(
            format!("{} vs {}", report.tau, report.tau_prime),
            "tau Lebesgue iff tau' Lebesgue",
            "biconditional holds",
            format!("tau: {}, tau': {}", report.lebesgue_tau(), report.lebesgue_tau_prime()),
            report.biconditional_holds(),
        ));
    }
    Ok(rows)
}

pub(super) fn product(policy: &Policy, seed: u64) -> Result<Vec<Row>> {
    let (s2, s3) = (Space::Coord(2), Space::Coord(3));
    let t1 = base(&[NormTag::Sup], s2.clone())?;
    let t2 = base(&[NormTag::L1], s3.clone())?;
    let a1 = CollectionSpec::new(vec![
        vec![LatticeElement::ints(&[1, 0]), LatticeElement::ints(&[0, 2])],
        vec![LatticeElement::ints(&[1, 1])],
    ])?;
    let a2 = CollectionSpec::new(vec![vec![LatticeElement::ints(&[1, 1, 1])], vec![LatticeElement::ints(&[2, 0, 1])]])?;
    let left = unbounded_topology(
        &product_topology(&[t1.clone(), t2.clone()])?,
        &product_collection(&[a1.clone(), a2.clone()])?,
    )?;
    let u1 = unbounded_topology(&t1, &a1)?;
    let u2 = unbounded_topology(&t2, &a2)?;
    let right = product_topology(&[u1.clone(), u2.clone()])?;
    let space = Space::Product(vec![s2.clone(), s3.clone()]);
    let mut s = Sampler::new(seed);
    let samples = s.elements(&space, 200);
    let eq = family_equal(left.members(), right.members(), &samples, policy.exec)?;
    let mut rows = vec![Row::invariant(
        format!("{left} vs {right}"),
        "unbounded product equals product of unbounded",
        match &eq.unmatched {
            None => format!("equal on {} samples", samples.len()),
            Some(m) => format!("no partner for {m}"),
        },
        eq.holds,
    )];

    let nets = [
        (LatticeElement::ints(&[1, -1]), LatticeElement::ints(&[0, 2, 1]), Rate::Harmonic, false),
        (LatticeElement::ints(&[3, 0]), LatticeElement::ints(&[1, 1, 1]), Rate::Constant, true),
        (LatticeElement::ints(&[0, 0]), LatticeElement::ints(&[4, 0, 0]), Rate::Constant, false),
        (LatticeElement::ints(&[2, 5]), LatticeElement::ints(&[0, 0, 7]), Rate::Geometric, false),
    ];
    for (v1, v2, rate, shift_second) in nets {
        let v = LatticeElement::Product(vec![v1.clone(), v2.clone()]);
        let l2 = if shift_second { v2.clone() } else { s3.zero() };
        let limit = LatticeElement::Product(vec![s2.zero(), l2.clone()]);
        let net = NetSpec::scaled(v, rate);
        for (label, whole, c1, c2) in
            [("product", &right, &u1, &u2), ("base product", &product_topology(&[t1.clone(), t2.clone()])?, &t1, &t2)]
        {
            let joint = converges_to(&net, &limit, whole, policy)?;
            let b1 = converges_to(&NetSpec::scaled(v1.clone(), rate), &s2.zero(), c1, policy)?;
            let b2 = converges_to(&NetSpec::scaled(v2.clone(), rate), &l2, c2, policy)?;
            rows.push(Row::claim(
                format!("{net} -> {limit} in {label}"),
                "product convergence iff blockwise",
                format!("blocks: {}, {}", b1.status, b2.status),
                joint.status.to_string(),
                joint.converges() == (b1.converges() && b2.converges()),
            ));
        }
    }
    Ok(rows)
}

pub(super) fn euclid_r2(policy: &Policy, _seed: u64) -> Result<Vec<Row>> {
    let euclid = PseudonormExpr::norm(NormTag::Euclid);
    let r2 = Space::Coord(2);
    let exhaustion: Vec<LatticeElement> =
        (0..=10).map(|j| LatticeElement::coord(vec![Scalar::from_int(1 << j), Scalar::zero()])).collect();
    let u_a = TopologySpec::derived(
        exhaustion.iter().map(|a| euclid.clone().restrict(a.clone())).collect::<Result<_>>()?,
        "u_A(euclid; a_t = (t,0), t = 1,2,4,..,1024)",
    )?
    .with_space(r2.clone())?;
    let u_set = TopologySpec::derived(
        vec![euclid.clone().unbounded_sup(exhaustion.clone())?],
        "u<euclid, {A}>; A exhausted by a_t = (t,0), t = 1,2,4,..,1024",
    )?
    .with_space(r2.clone())?;
    let net = NetSpec::sin2d();
    let mut rows = Vec::new();

    // Deficits are bounded by 3 < 1024, so the truncated exhaustion attains the sup.
    let mut closed_ok = true;
    for limit in [r2.zero(), LatticeElement::ints(&[2, 0])] {
        let l = limit.to_f64_coords()?;
        for k in index_grid(policy.horizon) {
            let x = net.value_at_f64(k)?;
            let d: Vec<f64> = x.iter().zip(&l).map(|(a, b)| a - b).collect();
            let v = u_set.members()[0].evaluate_f64(&d)?;
            closed_ok &= (v - d[0].abs()).abs() <= 1e-12;
        }
    }
    rows.push(Row::invariant(
        "exhausted sup along (2 + sin k, 0)",
        "sup over a_t equals |first coordinate of x_k - x|",
        if closed_ok { "equal at every checked index" } else { "differs" },
        closed_ok,
    ));

    for (interp, limit) in [("limit 0", r2.zero()), ("limit (2,0)", LatticeElement::ints(&[2, 0]))] {
        let a = converges_to(&net, &limit, &u_a, policy)?;
        rows.push(verdict_claim(format!("{net} -> {limit} ({interp})"), "does not converge in u_A tau", false, &a));
        let b = converges_to(&net, &limit, &u_set, policy)?;
        rows.push(verdict_claim(format!("{net} -> {limit} ({interp})"), "converges in u<tau,{A}>", true, &b));
    }
    Ok(rows)
}

pub(super) fn ideal_invariance(policy: &Policy, seed: u64) -> Result<Vec<Row>> {
    let mut s = Sampler::new(seed);
    let r3 = Space::Coord(3);
    let tau = base(&[NormTag::Sup, NormTag::L1], r3.clone())?;
    let gens = [LatticeElement::ints(&[1, 0, 0]), LatticeElement::ints(&[0, 1, 0])];
    let mut candidates: Vec<LatticeElement> =
        (0..20).map(|_| LatticeElement::coord(vec![s.scalar(), s.scalar(), Scalar::zero()])).collect();
    candidates.push(LatticeElement::ints(&[0, 0, 1]));
    let zero = r3.zero();
    let nets = [
        (NetSpec::scaled(LatticeElement::ints(&[1, 1, 0]), Rate::Harmonic), zero.clone()),
        (NetSpec::scaled(LatticeElement::ints(&[1, 2, 3]), Rate::Geometric), zero.clone()),
        (NetSpec::table(vec![LatticeElement::ints(&[0, 0, 5])], TableTail::Repeat)?, zero.clone()),
        (NetSpec::scaled(LatticeElement::ints(&[1, 0, 0]), Rate::Constant), zero.clone()),
    ];
    let mut rows = ideal_equivalence_check(&tau, &gens, &candidates, &nets, policy)?;

    let tau_seq = base(&[NormTag::Sup], Space::Seq)?;
    let e = harmonic();
    let seq_candidates = [e.scale(&Scalar::from_int(2)), seq(&[3, 1], 0, 1), seq(&[], 1, 0)];
    let seq_nets =
        [(NetSpec::UnitWalk, Space::Seq.zero()), (NetSpec::scaled(seq(&[], 1, 0), Rate::Harmonic), Space::Seq.zero())];
    rows.extend(ideal_equivalence_check(&tau_seq, &[e], &seq_candidates, &seq_nets, policy)?);

    let r2 = Space::Coord(2);
    let pair = DualPair::standard(r2.clone());
    let aa = CollectionSpec::new(vec![vec![LatticeElement::ints(&[1, 1])], vec![LatticeElement::ints(&[2, 1])]])?;
    let e0 = [LatticeElement::ints(&[1, 0])];
    let f0 = [Functional::new(LatticeElement::ints(&[1, 1]))?];
    let e_samples = [LatticeElement::ints(&[3, 0]), LatticeElement::ints(&[0, 1])];
    let f_samples = [Functional::new(LatticeElement::ints(&[2, 2]))?, Functional::new(LatticeElement::ints(&[1, 0]))?];
    let pair_nets = [
        (NetSpec::scaled(LatticeElement::ints(&[1, 0]), Rate::Harmonic), r2.zero()),
        (NetSpec::scaled(LatticeElement::ints(&[0, 4]), Rate::Constant), r2.zero()),
        (NetSpec::scaled(LatticeElement::ints(&[2, 3]), Rate::Constant), r2.zero()),
    ];
    for interp in Interpretation::BOTH {
        rows.extend(ideal_invariance_check(&pair, &e0, &f0, &aa, &e_samples, &f_samples, &pair_nets, interp, policy)?);
    }
    Ok(rows)
}

pub(super) fn hausdorff(policy: &Policy, seed: u64) -> Result<Vec<Row>> {
    let mut s = Sampler::new(seed);
    let mut rows = Vec::new();
    for (space, tags) in [(Space::Coord(5), &[NormTag::Sup, NormTag::L1][..]), (Space::Seq, &[NormTag::Sup][..])] {
        let tau = base(tags, space.clone())?;
        let xs: Vec<LatticeElement> = (0..50).map(|_| s.nonzero_element(&space)).collect();
        let found = policy.exec.try_map(&xs, |x| hausdorff_witness(&tau, x))?;
        let positive = found.iter().filter(|w| w.value.is_positive()).count();
        let min = found.iter().map(|w| w.value.clone()).min().expect("fifty samples");
        rows.push(Row::invariant(
            format!("{} random nonzero elements of {space} under {tau}, seed {seed}", xs.len()),
            "separating witness is positive",
            format!("{positive}/{} positive, smallest value {min}", xs.len()),
            positive == xs.len(),
        ));
    }
    let tau = base(&[NormTag::Sup], Space::Coord(2))?;
    let w = hausdorff_witness(&tau, &LatticeElement::ints(&[0, 2]))?;
    rows.push(Row::invariant(
        "x = [0,2] under tau(norm(sup))",
        "witness value",
        format!("{} = {}", w.pseudonorm, w.value),
        w.value == Scalar::from_int(2),
    ));

    Ok(rows)
}
