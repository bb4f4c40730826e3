use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigUint;

use symdes::arith::factorize;
use symdes::brc::{legendre_solvable, LegendreForm};
use symdes::construct::{build_biplane_11, flag_transitive, parse_generators, BIPLANE_11_GENERATORS};
use symdes::feasibility::{scan, search_alternating_intransitive, AltIntransitiveConfig};

fn bench_intransitive_search(c: &mut Criterion) {
    c.bench_function("search_alt_intransitive_default_grid", |b| {
        b.iter(|| search_alternating_intransitive(&AltIntransitiveConfig::default()).unwrap())
    });
}

fn bench_scan(c: &mut Criterion) {
    c.bench_function("scan_3_3_1_default_grid", |b| b.iter(|| scan("3.3.1", None).unwrap()));
}

fn bench_legendre(c: &mut Criterion) {
    let forms: Vec<LegendreForm> = [(1i64, 1i64, -2i64), (3, -1, -2), (1, 1, -6), (7, 11, -13), (23, 29, -31)]
        .iter()
        .map(|&(a, b, c)| LegendreForm::new(a, b, c).unwrap())
        .collect();
    c.bench_function("legendre_solvable_batch", |b| {
        b.iter(|| forms.iter().map(legendre_solvable).count())
    });
}

fn bench_flag_orbit(c: &mut Criterion) {
    let d = build_biplane_11();
    let gens = parse_generators(BIPLANE_11_GENERATORS).unwrap();
    c.bench_function("biplane_flag_orbit", |b| {
        b.iter(|| flag_transitive(&d, &gens).unwrap())
    });
}

fn bench_factorize(c: &mut Criterion) {
    // an odd-dimension orthogonal order at desk scale
    let n = BigUint::parse_bytes(b"4585351680", 10).unwrap() * BigUint::from(59048u64).pow(3);
    c.bench_function("factorize_group_order_scale", |b| {
        b.iter(|| factorize(&n).unwrap())
    });
}

criterion_group!(
    benches,
    bench_intransitive_search,
    bench_scan,
    bench_legendre,
    bench_flag_orbit,
    bench_factorize
);
criterion_main!(benches);
