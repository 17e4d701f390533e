use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use loopforge::classify;
use loopforge::corpus::STEINER_PROBLEM;
use loopforge::finder::{solve, Mode, SearchProblem};
use loopforge::perm::{mlt1, schreier_stabilizer};
use loopforge::term::{catalog_identity, holds};
use loopforge::varieties::association_profile;
use loopforge_bench::sample_loops;

fn identity_check(c: &mut Criterion) {
    let mut g = c.benchmark_group("holds");
    for name in ["FLEX", "M1", "RIF3"] {
        let id = catalog_identity(name).unwrap();
        for (loop_name, l) in sample_loops() {
            g.bench_with_input(BenchmarkId::new(name, loop_name), &l, |b, l| {
                b.iter(|| holds(l, &id).unwrap())
            });
        }
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (name, l) in sample_loops() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &l, |b, l| {
            b.iter(|| classify(l).unwrap())
        });
    }
    g.finish();
}

fn inner_mappings(c: &mut Criterion) {
    let mut g = c.benchmark_group("inner_mapping_group");
    g.sample_size(10);
    for (name, l) in sample_loops().into_iter().take(3) {
        g.bench_with_input(BenchmarkId::new("generators", name), &l, |b, l| {
            b.iter(|| mlt1(l).order())
        });
        g.bench_with_input(BenchmarkId::new("schreier", name), &l, |b, l| {
            b.iter(|| schreier_stabilizer(l).order())
        });
    }
    g.finish();
}

fn words(c: &mut Criterion) {
    let mut g = c.benchmark_group("association_profile");
    g.sample_size(10);
    for (name, l) in sample_loops().into_iter().take(2) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &l, |b, l| {
            b.iter(|| association_profile(l, 6).unwrap())
        });
    }
    g.finish();
}

fn finder(c: &mut Criterion) {
    let mut g = c.benchmark_group("finder");
    g.sample_size(10);
    let steiner = SearchProblem::parse(STEINER_PROBLEM).unwrap();
    for n in [8, 10] {
        let p = SearchProblem {
            order: n,
            ..steiner.clone()
        };
        g.bench_with_input(BenchmarkId::new("steiner_nonassoc", n), &p, |b, p| {
            b.iter(|| solve(p).unwrap())
        });
    }
    let iso5 = SearchProblem::new(5).with_mode(Mode::EnumerateUpToIso);
    g.bench_function("enumerate_order_5", |b| b.iter(|| solve(&iso5).unwrap()));
    g.finish();
}

criterion_group!(
    benches,
    identity_check,
    classification,
    inner_mappings,
    words,
    finder
);
criterion_main!(benches);
