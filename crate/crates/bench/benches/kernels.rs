use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mextremal_bench::{extremal_data, interior_data, nodes};
use mextremal_core::certify::{properness_profile, prop24_certificate};
use mextremal_core::cplane::blaschke_degree_of_data;
use mextremal_core::maps::family_propab;
use mextremal_core::pick::{classify_pick, falsify_weak_extremality, FalsifierBudget};
use mextremal_core::{DomainModel, Expr, MapSpec, NumericPolicy};

fn pick(c: &mut Criterion) {
    let policy = NumericPolicy::default();
    let mut g = c.benchmark_group("pick_classify");
    for n in [4, 16, 64] {
        let data = extremal_data(n, n / 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, d| {
            b.iter(|| classify_pick(black_box(d), &policy).unwrap())
        });
    }
    g.finish();
}

fn schur(c: &mut Criterion) {
    let policy = NumericPolicy::default();
    let mut g = c.benchmark_group("schur_degree");
    for n in [4, 16, 64] {
        let data = extremal_data(n, n / 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, d| {
            b.iter(|| blaschke_degree_of_data(black_box(d.nodes()), d.values(), &policy).unwrap())
        });
    }
    let data = interior_data(16);
    g.bench_function("interior_16", |b| {
        b.iter(|| blaschke_degree_of_data(black_box(data.nodes()), data.values(), &policy).unwrap())
    });
    g.finish();
}

fn certificate(c: &mut Criterion) {
    let policy = NumericPolicy {
        boundary_samples: 10_000,
        ..NumericPolicy::default()
    };
    c.bench_function("certificate_ball_10k", |b| {
        b.iter(|| prop24_certificate(black_box(4), 0.3, &policy, 7).unwrap())
    });
}

fn profile(c: &mut Criterion) {
    let fam = family_propab(5, 0.3).unwrap();
    c.bench_function("profile_64x5", |b| {
        b.iter(|| properness_profile(black_box(&fam.map), &fam.domain, 64, 5).unwrap())
    });
}

fn falsifier(c: &mut Criterion) {
    let map = MapSpec::new(vec![Expr::real(0.2), Expr::monomial(mextremal_core::c64(0.3, 0.0), 1)]);
    let dom = DomainModel::polydisc(2).unwrap();
    let budget = FalsifierBudget {
        restarts: 2,
        sweeps: 20,
        ..FalsifierBudget::default()
    };
    let ns = nodes(3);
    let mut g = c.benchmark_group("falsifier");
    g.sample_size(10);
    g.bench_function("polydisc_3_nodes", |b| {
        b.iter(|| falsify_weak_extremality(black_box(&map), &dom, &ns, &budget).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pick, schur, certificate, profile, falsifier);
criterion_main!(benches);
