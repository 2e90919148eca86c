use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use riesz_core::convergence::{converges_to, NetSpec, Policy, Rate};
use riesz_core::pseudonorm::{check_axioms, NullSequence};
use riesz_core::sampling::{NodeKind, Sampler};
use riesz_core::topology::TopologySpec;
use riesz_core::{Execution, LatticeElement, PseudonormExpr, Space};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_axioms");
    group.sample_size(10);
    for space in [Space::Coord(5), Space::Seq] {
        let mut s = Sampler::new(1);
        let xs = s.elements(&space, 100);
        let p = s.expr_of_kind(&space, NodeKind::UnboundedSup, 3);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, &space), &xs, |b, xs| {
                b.iter(|| check_axioms(&p, xs, &NullSequence::BATTERY, 10_000, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn verdicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("converges_to");
    let space = Space::Seq;
    let mut s = Sampler::new(2);
    let members: Vec<PseudonormExpr> = (0..32).map(|_| s.expr(&space, 3)).collect();
    let tau = TopologySpec::base(members).unwrap().with_space(space.clone()).unwrap();
    let net = NetSpec::scaled(s.element(&space), Rate::Harmonic);
    let limit: LatticeElement = space.zero();
    for (name, exec) in STRATEGIES {
        let policy = Policy { exec, ..Policy::default() };
        group.bench_function(name, |b| b.iter(|| converges_to(&net, &limit, &tau, &policy).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, axioms, verdicts);
criterion_main!(benches);
