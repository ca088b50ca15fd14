use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use localcc_bench::{bipartite, complete, cycle, weighted};
use localcc_core::graph::LocalObjective;
use localcc_core::oracle::exact_min_local_disagreements;
use localcc_core::relaxation::solve_disagreement_relaxation;
use localcc_core::{greedy_clustering_bipartite, greedy_clustering_complete, solve_maxmin_agreements, solve_minmax};

fn relaxation(c: &mut Criterion) {
    let mut group = c.benchmark_group("relaxation");
    for n in [8, 12, 16, 20] {
        let g = cycle(n);
        group.bench_with_input(BenchmarkId::new("gap_cycle", n), &g, |b, g| {
            b.iter(|| solve_disagreement_relaxation(black_box(g), LocalObjective::Max, &[]).unwrap())
        });
    }
    group.finish();
}

fn rounding(c: &mut Criterion) {
    let g = complete(10, 1);
    let m = solve_disagreement_relaxation(&g, LocalObjective::Max, &[]).unwrap();
    c.bench_function("greedy_complete_n10", |b| b.iter(|| greedy_clustering_complete(black_box(&m))));
    let (bg, sides) = bipartite(5, 5, 1);
    let bm = solve_disagreement_relaxation(&bg, LocalObjective::Max, &[]).unwrap();
    c.bench_function("greedy_bipartite_5x5", |b| b.iter(|| greedy_clustering_bipartite(black_box(&bm), &sides)));
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    group.sample_size(20);
    let g = weighted(10, 3);
    group.bench_function("minmax_general_n10", |b| b.iter(|| solve_minmax(black_box(&g)).unwrap()));
    let big = weighted(40, 3);
    group.bench_function("maxmin_agree_n40", |b| b.iter(|| solve_maxmin_agreements(black_box(&big), 0.5).unwrap()));
    let small = weighted(9, 4);
    group.bench_function("oracle_n9", |b| {
        b.iter(|| exact_min_local_disagreements(black_box(&small), LocalObjective::Max).unwrap())
    });
    group.finish();
}

criterion_group!(benches, relaxation, rounding, solvers);
criterion_main!(benches);
