use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gt_core::harmonic::{build_i_pi, ProductGroup};
use gt_core::sl3::witness_no_gelfand;
use gt_core::tensor::{classify_gelfand, mult_closed, mult_sum};
use gt_core::{CharTable, Gl2Irrep, GroupParams, MultTable};

fn single_triple(c: &mut Criterion) {
    let mut group = c.benchmark_group("triple");
    for q in [5u64, 9, 16] {
        let g = GroupParams::new(q).unwrap();
        let (a, b, t) = (Gl2Irrep::W(0, 1), Gl2Irrep::X(g.x_params()[1]), Gl2Irrep::W(1, 2));
        group.bench_with_input(BenchmarkId::new("class_sum", q), &g, |bench, g| {
            bench.iter(|| mult_sum(black_box(&a), black_box(&b), black_box(&t), g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed_form", q), &g, |bench, g| {
            bench.iter(|| mult_closed(black_box(&a), black_box(&b), black_box(&t), g).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("tables");
    group.sample_size(10);
    for q in [5u64, 9] {
        let g = GroupParams::new(q).unwrap();
        group.bench_with_input(BenchmarkId::new("char_table_values", q), &g, |bench, g| {
            bench.iter(|| {
                let t = CharTable::new(*g);
                let n = t.irreps().len();
                (0..n).map(|i| t.value(i, i % t.classes().len()).coeffs().len()).sum::<usize>()
            })
        });
        group.bench_with_input(BenchmarkId::new("pair_row", q), &g, |bench, g| {
            let t = MultTable::new(*g);
            let n = t.irreps().len();
            bench.iter(|| t.pair_row(black_box(n - 1), black_box(n / 2)).unwrap())
        });
    }
    let g = GroupParams::new(5).unwrap();
    group.bench_function("classify_gelfand/5", |bench| bench.iter(|| classify_gelfand(&MultTable::new(g)).unwrap()));
    group.bench_function("sl3_witnesses/9", |bench| {
        let g = GroupParams::new(9).unwrap();
        bench.iter(|| g.irreps().iter().map(|t| witness_no_gelfand(t, &g).unwrap().mult).sum::<u64>())
    });
    group.finish();
}

fn harmonic(c: &mut Criterion) {
    let mut group = c.benchmark_group("harmonic");
    group.sample_size(10);
    let g2 = ProductGroup::new(2).unwrap();
    group.bench_function("build_i_pi/q2/V0", |bench| bench.iter(|| build_i_pi(&Gl2Irrep::V(0), &g2).unwrap().dim()));
    let g3 = ProductGroup::new(3).unwrap();
    group.bench_function("build_i_pi/q3/X1", |bench| bench.iter(|| build_i_pi(&Gl2Irrep::X(1), &g3).unwrap().dim()));
    group.finish();
}

criterion_group!(benches, single_triple, tables, harmonic);
criterion_main!(benches);
