use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hn_bench::{fp_inputs, lattice_inputs};
use hn_core::engine::hn_sequence;
use hn_core::fp::destab::{DEFAULT_BUDGET, DEFAULT_CLOSURE_CAP};
use hn_core::fp::{closure_candidate, destabilizer_bruteforce, FpHost};
use hn_core::lattice::LatticeHost;
use std::hint::black_box;

fn fp_sequence(c: &mut Criterion) {
    let host = FpHost::default();
    let mut g = c.benchmark_group("fp_hn_sequence");
    for (p, dim, n) in [(2, 3, 2), (3, 3, 3), (2, 5, 3), (5, 4, 2)] {
        let xs = fp_inputs(p, dim, n, 16);
        g.bench_with_input(BenchmarkId::from_parameter(format!("p{p}_d{dim}_n{n}")), &xs, |b, xs| {
            b.iter(|| xs.iter().map(|x| hn_sequence(&host, black_box(x)).unwrap().len()).sum::<usize>())
        });
    }
    g.finish();
}

fn fp_destabilizers(c: &mut Criterion) {
    let mut g = c.benchmark_group("fp_destabilizer");
    for (p, dim) in [(2, 4), (3, 4)] {
        let xs = fp_inputs(p, dim, 3, 8);
        g.bench_with_input(BenchmarkId::new("closure", format!("p{p}_d{dim}")), &xs, |b, xs| {
            b.iter(|| xs.iter().map(|x| closure_candidate(black_box(x), DEFAULT_CLOSURE_CAP).unwrap().dim()).sum::<usize>())
        });
        g.bench_with_input(BenchmarkId::new("bruteforce", format!("p{p}_d{dim}")), &xs, |b, xs| {
            b.iter(|| xs.iter().map(|x| destabilizer_bruteforce(black_box(x), DEFAULT_BUDGET).unwrap().dim()).sum::<usize>())
        });
    }
    g.finish();
}

fn lattice_sequence(c: &mut Criterion) {
    let host = LatticeHost::default();
    let mut g = c.benchmark_group("lattice_hn_sequence");
    g.sample_size(20);
    for rank in 2..=4 {
        let ls = lattice_inputs(rank, 8);
        g.bench_with_input(BenchmarkId::from_parameter(format!("rank{rank}")), &ls, |b, ls| {
            b.iter(|| ls.iter().map(|l| hn_sequence(&host, black_box(l)).unwrap().len()).sum::<usize>())
        });
    }
    g.finish();
}

criterion_group!(benches, fp_sequence, fp_destabilizers, lattice_sequence);
criterion_main!(benches);
