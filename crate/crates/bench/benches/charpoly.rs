use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperres::charpoly::{charpoly_path, charpoly_star, charpoly_starlike};
use hyperres::chipfiring::{critical_configs_complete, stable_configs_hyperpath};
use hyperres::firing_graph::{build_firing_graph, validate_structure};
use hyperres::hypergraph::make_hyperpath;
use hyperres::oracle::{charpoly_eval_oracle, parse_rational};
use hyperres::Configuration;

fn closed_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("closed_form");
    for (n, k) in [(2, 3), (4, 3), (8, 3), (4, 5), (12, 4)] {
        g.bench_with_input(BenchmarkId::new("path", format!("n{n}_k{k}")), &(n, k), |b, &(n, k)| {
            b.iter(|| charpoly_path(black_box(n), black_box(k)).unwrap())
        });
    }
    for (m, k) in [(2, 3), (6, 4)] {
        g.bench_with_input(BenchmarkId::new("star", format!("m{m}_k{k}")), &(m, k), |b, &(m, k)| {
            b.iter(|| charpoly_star(black_box(m), black_box(k)).unwrap())
        });
    }
    g.bench_function("starlike_1_1_2_k3", |b| b.iter(|| charpoly_starlike(3, black_box(&[1, 1, 2])).unwrap()));
    g.bench_function("starlike_1_2_3_4_k4", |b| b.iter(|| charpoly_starlike(4, black_box(&[1, 2, 3, 4])).unwrap()));
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    let lambda = parse_rational("2").unwrap();
    for (n, k) in [(1, 3), (1, 4), (2, 3)] {
        let h = make_hyperpath(n, k).unwrap();
        g.bench_function(format!("path_n{n}_k{k}"), |b| b.iter(|| charpoly_eval_oracle(&h, black_box(&lambda)).unwrap()));
    }
    g.finish();
}

fn chip_firing(c: &mut Criterion) {
    let mut g = c.benchmark_group("chip_firing");
    for k in [4, 5, 6] {
        g.bench_with_input(BenchmarkId::new("critical_complete", k), &k, |b, &k| {
            b.iter(|| critical_configs_complete(black_box(k)).unwrap())
        });
    }
    let h = make_hyperpath(3, 3).unwrap();
    let roots = stable_configs_hyperpath(3, 3).unwrap();
    g.bench_function("firing_graphs_all_roots_n3_k3", |b| {
        b.iter(|| {
            for c0 in &roots {
                black_box(build_firing_graph(&h, c0).unwrap());
            }
        })
    });
    let c0 = Configuration::with_omitted_bank(0, &[1, 1, 1, 1, 0, 0]).unwrap();
    let fg = build_firing_graph(&h, &c0).unwrap();
    g.bench_function("validate_structure_worked_example", |b| b.iter(|| validate_structure(black_box(&fg), 2)));
    g.finish();
}

criterion_group!(benches, closed_forms, oracle, chip_firing);
criterion_main!(benches);
