use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tourist_core::{chi, omega, watts_strogatz, GeneratorSpec, Graph, Model, TouristWalker, WalkerConfig};

fn ws(n: usize) -> Graph {
    watts_strogatz(&GeneratorSpec {
        model: Model::WattsStrogatz,
        n,
        mean_degree: 10,
        rewiring_p: 0.05,
        seed: 1,
    })
    .unwrap()
}

fn walk_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("walk_all");
    for n in [500, 5_000] {
        let g = ws(n);
        for mu in [1, 3, 5] {
            let w = TouristWalker::new(&g, WalkerConfig::new(mu)).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("mu{mu}"), n), &w, |b, w| {
                b.iter(|| black_box(w.walk_all()))
            });
        }
    }
    group.finish();
}

fn chi_vs_omega(c: &mut Criterion) {
    let mut group = c.benchmark_group("small_worldness");
    group.sample_size(10);
    for n in [500, 2_000] {
        let g = ws(n);
        group.bench_with_input(BenchmarkId::new("chi_mu1", n), &g, |b, g| {
            b.iter(|| black_box(chi(g, WalkerConfig::new(1), 10, 7).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("omega", n), &g, |b, g| {
            b.iter(|| black_box(omega(g, 10, 7).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, walk_all, chi_vs_omega);
criterion_main!(benches);
