use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hamconn_bench::{clique_edge_deleted, complete, extremal};
use hamconn_core::codec::{emit_graph6, parse_graph6};
use hamconn_core::iso::{are_isomorphic, fingerprint};
use hamconn_core::oracle::is_hamilton_connected;
use hamconn_core::spectra::{adjacency_spectral_radius, signless_laplacian_spectral_radius, DEFAULT_TOL};
use hamconn_core::Evaluator;

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for n in [10, 12, 14] {
        let g = complete(n);
        group.bench_with_input(BenchmarkId::new("complete", n), &g, |b, g| {
            b.iter(|| is_hamilton_connected(black_box(g)).unwrap())
        });
    }
    let g = extremal(14);
    group.bench_function("extremal/14", |b| b.iter(|| is_hamilton_connected(black_box(&g)).unwrap()));
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectra");
    for n in [16, 32, 64] {
        let g = clique_edge_deleted(n);
        group.bench_with_input(BenchmarkId::new("rho", n), &g, |b, g| {
            b.iter(|| adjacency_spectral_radius(black_box(g), DEFAULT_TOL).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("q", n), &g, |b, g| {
            b.iter(|| signless_laplacian_spectral_radius(black_box(g), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn conditions(c: &mut Criterion) {
    let g = extremal(16);
    c.bench_function("evaluate_all/16", |b| b.iter(|| Evaluator::new(black_box(&g)).evaluate_all().unwrap()));
}

fn iso_and_codec(c: &mut Criterion) {
    let g = clique_edge_deleted(20);
    let h = g.relabel(&(0..20).rev().collect::<Vec<_>>()).unwrap();
    c.bench_function("fingerprint/20", |b| b.iter(|| fingerprint(black_box(&g))));
    c.bench_function("isomorphic/20", |b| b.iter(|| are_isomorphic(black_box(&g), black_box(&h))));
    let line = emit_graph6(&g).unwrap();
    c.bench_function("graph6_round_trip/20", |b| {
        b.iter(|| emit_graph6(&parse_graph6(black_box(&line)).unwrap()).unwrap())
    });
}

criterion_group!(benches, oracle, spectra, conditions, iso_and_codec);
criterion_main!(benches);
