use criterion::{criterion_group, criterion_main, Criterion};
use ogq_core::{gw_invariant, CycloNum, GWQuery, StrictPartition, StructureTable};
use std::hint::black_box;

fn cyclotomic_mul(c: &mut Criterion) {
    let order = 20;
    let a = (0..8).fold(CycloNum::zero(order), |acc, k| {
        &acc + &CycloNum::root_of_unity(order, 3 * k)
    });
    let b = (0..8).fold(CycloNum::one(order), |acc, k| {
        &acc + &CycloNum::root_of_unity(order, k * k)
    });
    c.bench_function("cyclotomic mul N=20", |bch| {
        bch.iter(|| black_box(&a) * black_box(&b))
    });
}

fn gw_n5(c: &mut Criterion) {
    let ins = ["3,1", "2", "4,3,1"]
        .map(|t| StrictPartition::parse(t).unwrap())
        .to_vec();
    let q = GWQuery::new(5, 2, 3, ins);
    assert!(q.degree_ok());
    // Warm the evaluation-point cache so the bench measures the J-sum.
    gw_invariant(&q).unwrap();
    c.bench_function("gw n=5 g=2", |bch| {
        bch.iter(|| gw_invariant(black_box(&q)).unwrap())
    });
}

fn table_n4(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function("build n=4", |bch| {
        bch.iter(|| StructureTable::build(black_box(4), None).unwrap())
    });
    group.finish();
}

criterion_group!(benches, cyclotomic_mul, gw_n5, table_n4);
criterion_main!(benches);
