use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use polarcheck_bench::catalog_action;
use polarcheck_core::catalog::{verify_table1, Table1Row};
use polarcheck_core::lie_algebras::{build_classical, Family};
use polarcheck_core::{analyze, ToleranceConfig};

fn build(c: &mut Criterion) {
    c.bench_function("build so(16)", |b| b.iter(|| build_classical(Family::So, black_box(16)).unwrap()));
    c.bench_function("build sp(4)", |b| b.iter(|| build_classical(Family::Sp, black_box(4)).unwrap()));
}

fn polarity(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    for id in ["conj-su3", "hermann-so3-su3", "sigma-so8-outer", "so7-diagonal-twisted"] {
        let action = catalog_action(id);
        c.bench_function(&format!("analyze {id}"), |b| b.iter(|| analyze(black_box(&action), &tol).unwrap()));
    }
}

fn transitivity(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("table rows");
    group.sample_size(10);
    for row in [Table1Row::Spin7, Table1Row::Spin9] {
        group.bench_function(row.id(), |b| b.iter(|| verify_table1(row, None, &tol).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, build, polarity, transitivity);
criterion_main!(benches);
