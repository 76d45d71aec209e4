use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nsct_bench::{dense_cyc, ut4_with_patterns};
use nsct_core::catalog;
use nsct_core::chartab::{dixon_character_table, DEFAULT_MAX_ORDER};
use nsct_core::group::DEFAULT_MAX_NORMAL_SUBGROUPS;
use nsct_core::lattice::DEFAULT_MAX_LATTICE;
use nsct_core::nsct::{build_nsct, finest_theory};

fn character_tables(c: &mut Criterion) {
    let (ut4, _) = ut4_with_patterns();
    c.bench_function("dixon UT4(2)", |b| {
        b.iter(|| dixon_character_table(black_box(&ut4), DEFAULT_MAX_ORDER).unwrap())
    });
    let c3xc4 = catalog::c3xc4();
    c.bench_function("dixon C3xC4", |b| {
        b.iter(|| dixon_character_table(black_box(&c3xc4), DEFAULT_MAX_ORDER).unwrap())
    });
}

fn theories(c: &mut Criterion) {
    let (g, pats) = ut4_with_patterns();
    let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
    c.bench_function("nsct UT4(2) patterns", |b| {
        b.iter(|| build_nsct(&g, black_box(&pats), Some(&t), DEFAULT_MAX_LATTICE).unwrap())
    });
    c.bench_function("finest UT4(2)", |b| {
        b.iter(|| {
            finest_theory(
                black_box(&g),
                Some(&t),
                DEFAULT_MAX_NORMAL_SUBGROUPS,
                DEFAULT_MAX_LATTICE,
            )
            .unwrap()
        })
    });
}

fn cyclotomics(c: &mut Criterion) {
    let a = dense_cyc(60);
    let b2 = dense_cyc(60).conj();
    c.bench_function("cyc mul m=60", |b| {
        b.iter(|| black_box(&a) * black_box(&b2))
    });
    c.bench_function("cyc inv m=60", |b| {
        b.iter(|| black_box(&a).try_inv().unwrap())
    });
}

criterion_group!(benches, character_tables, theories, cyclotomics);
criterion_main!(benches);
