use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use spinhl_bench::{comp, point, six_vertex_boundaries, spin_hl_boundary};
use spinhl_core::puzzles::{expand_6v, expand_hs};
use spinhl_core::sampling::seeded;
use spinhl_core::symmetric::{spin_hl_f, spin_hl_f_symmetrized};
use spinhl_core::verify::{ybe_residual, YbeInstance};
use spinhl_core::ExactScalar;

fn functions(c: &mut Criterion) {
    let m = comp("1,0,2,1");
    let p = point(m.size() as usize);
    c.bench_function("spin_hl_f lattice n=4", |b| b.iter(|| spin_hl_f(black_box(&m), &p).unwrap()));
    c.bench_function("spin_hl_f symmetrized n=4", |b| {
        b.iter(|| spin_hl_f_symmetrized(black_box(&m), &p).unwrap())
    });
}

fn puzzles(c: &mut Criterion) {
    for (i, (l, w, m)) in six_vertex_boundaries().into_iter().enumerate() {
        c.bench_function(&format!("expand_6v example {}", i + 1), |b| {
            b.iter(|| expand_6v(black_box(&l), &w, &m).unwrap())
        });
    }
    let (l, m) = spin_hl_boundary();
    let mut group = c.benchmark_group("higher spin");
    group.sample_size(10);
    group.bench_function("expand_hs", |b| b.iter(|| expand_hs(black_box(&l), &m, None).unwrap()));
    group.finish();
}

fn yang_baxter(c: &mut Criterion) {
    let inst = YbeInstance::random(&mut seeded(3), 2, [2, 3, 1]).unwrap();
    let q = ExactScalar::ratio(3, 7);
    c.bench_function("ybe residual rank 2", |b| b.iter(|| ybe_residual(black_box(&inst), &q).unwrap()));
}

criterion_group!(benches, functions, puzzles, yang_baxter);
criterion_main!(benches);
