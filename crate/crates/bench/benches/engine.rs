use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dgtor_cli::fixtures;
use dgtor_cli::runner::build_span;
use dgtor_core::guard::CellBudget;
use dgtor_core::linalg::{smith_normal_form, CoefficientRing, Scalar, SparseMatrix};
use dgtor_core::tor::{tor_additive, TorRing};

fn random_integer_matrix(n: usize, seed: u64) -> SparseMatrix {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    // sparse with small entries, like the boundary matrices the engine sees
    SparseMatrix::from_entries(
        n,
        n,
        (0..n).flat_map(|r| {
            let vals: Vec<(usize, usize, Scalar)> = (0..n)
                .filter_map(|c| {
                    let v = (next() % 9) as i64 - 4;
                    (next() % 3 == 0 && v != 0).then_some((r, c, Scalar::Int(v)))
                })
                .collect();
            vals
        }),
    )
}

fn bench_smith_normal_form(c: &mut Criterion) {
    let m = random_integer_matrix(8, 0xfeedface);
    c.bench_function("smith_normal_form 8x8", |b| {
        b.iter(|| black_box(smith_normal_form(black_box(&m))))
    });
}

fn bench_two_sided_bar(c: &mut Criterion) {
    let spec = fixtures::free_loop_cp_infty();
    let span = build_span(&spec).unwrap();
    c.bench_function("two_sided_bar free_loop degree 9", |b| {
        b.iter(|| black_box(span.bar_complex(9, &CellBudget::default()).unwrap()))
    });
}

fn bench_loop_tor_with_products(c: &mut Criterion) {
    let mut spec = fixtures::loop_cp_infty();
    spec.ring = CoefficientRing::PrimeField(2);
    let span = build_span(&spec).unwrap();
    c.bench_function("loop fixture Tor + ring, F2, degree 12", |b| {
        b.iter(|| {
            let tsb = span.bar_complex(13, &CellBudget::default()).unwrap();
            let tor = tor_additive(&tsb.view).unwrap();
            let mult = |i: usize, j: usize| tsb.shuffle_mult(i, j);
            let mut ring = TorRing::with_additive(&tsb.view, &mult, tsb.unit_cell(), &tor).unwrap();
            black_box(ring.structure_constants().unwrap())
        })
    });
}

fn bench_su4_koszul(c: &mut Criterion) {
    let spec = fixtures::su4_u1();
    let span = build_span(&spec).unwrap();
    c.bench_function("su4_u1 Koszul route, Z, degree 16", |b| {
        b.iter(|| {
            let kz = span.koszul(17, &CellBudget::default()).unwrap();
            black_box(tor_additive(&kz.view).unwrap())
        })
    });
}

criterion_group!(
    benches,
    bench_smith_normal_form,
    bench_two_sided_bar,
    bench_loop_tor_with_products,
    bench_su4_koszul
);
criterion_main!(benches);
