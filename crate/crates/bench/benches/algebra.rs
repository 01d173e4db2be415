use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use pdchain::chain::find_diagonal;
use pdchain::corpus::{lens, lens_complex};
use pdchain::linalg::smith_normal_form;
use pdchain::quadratic::{gamma_group, FGAbelian};
use pdchain::triples::{triple_pd3, triples_isomorphic};
use pdchain::IntMatrix;

fn pseudo_random(rows: usize, cols: usize, seed: i64) -> IntMatrix {
    let entries: Vec<i64> = (0..rows * cols).map(|i| ((i as i64 * 7919 + seed * 104_729) % 41) - 20).collect();
    IntMatrix::from_i64(rows, cols, &entries)
}

fn smith(c: &mut Criterion) {
    let a = pseudo_random(20, 20, 3);
    c.bench_function("smith 20x20", |b| b.iter(|| smith_normal_form(black_box(&a))));
}

fn gamma(c: &mut Criterion) {
    let a = FGAbelian::from_i64(&[2, 4, 8, 0]).unwrap();
    c.bench_function("gamma Z/2+Z/4+Z/8+Z", |b| b.iter(|| gamma_group(black_box(&a)).whitehead_h().cokernel()));
}

fn diagonal(c: &mut Criterion) {
    let complex = Arc::new(lens_complex(7, 2).unwrap());
    c.bench_function("diagonal L(7,2)", |b| b.iter(|| find_diagonal(black_box(&complex)).unwrap()));
}

fn lens_triples(c: &mut Criterion) {
    let (x, y) = (lens(11, 1).unwrap(), lens(11, 2).unwrap());
    c.bench_function("triple L(11,1)", |b| b.iter(|| triple_pd3(black_box(&x)).unwrap()));
    let (tx, ty) = (triple_pd3(&x).unwrap(), triple_pd3(&y).unwrap());
    c.bench_function("compare L(11,1) L(11,2)", |b| b.iter(|| triples_isomorphic(black_box(&tx), black_box(&ty)).unwrap()));
}

criterion_group!(benches, smith, gamma, diagonal, lens_triples);
criterion_main!(benches);
