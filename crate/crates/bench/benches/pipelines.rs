use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rectcircuit::algebra::Polynomial;
use rectcircuit::circuit::{conductance, response};
use rectcircuit::synthesis::{decide_self_similar, decide_square};
use rectcircuit::tiling::{network_to_tiling, tiling_to_network, validate};
use rectcircuit::walks::{simulate_walk, MarkovChain};
use rectcircuit_bench::{complex_grid, grid, quadratics, six_tile_square};

fn kirchhoff(c: &mut Criterion) {
    let mut g = c.benchmark_group("kirchhoff");
    for k in [3, 5, 7] {
        let net = grid(k, k);
        g.bench_with_input(BenchmarkId::new("rational_grid", k), &net, |b, n| {
            b.iter(|| conductance(black_box(n)).unwrap())
        });
        let net = complex_grid(k, k);
        g.bench_with_input(BenchmarkId::new("gaussian_response", k), &net, |b, n| {
            b.iter(|| response(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn decisions(c: &mut Criterion) {
    let ps = quadratics();
    c.bench_function("decide_square_quadratics", |b| {
        b.iter(|| {
            for p in &ps {
                black_box(decide_square(p).unwrap());
            }
        })
    });
    let p = Polynomial::from_i64(&[-2, 0, 1]);
    c.bench_function("decide_self_similar_sqrt2", |b| b.iter(|| decide_self_similar(black_box(&p)).unwrap()));
}

fn tilings(c: &mut Criterion) {
    let t = six_tile_square();
    c.bench_function("validate_six_tiles", |b| b.iter(|| validate(black_box(&t))));
    c.bench_function("tiling_round_trip", |b| {
        b.iter(|| {
            let tn = tiling_to_network(black_box(&t)).unwrap();
            network_to_tiling(&tn.network, &tn.voltages).unwrap()
        })
    });
}

fn walks(c: &mut Criterion) {
    let chain = MarkovChain::from_network(&grid(3, 3), 0, 1).unwrap();
    c.bench_function("simulate_walk_10k", |b| b.iter(|| simulate_walk(black_box(&chain), 10_000, 7)));
}

criterion_group!(benches, kirchhoff, decisions, tilings, walks);
criterion_main!(benches);
