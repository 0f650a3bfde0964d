use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use weylcert::gkcert::{verify_certificate, VerifyConfig, WitnessCertificate};
use weylcert::ncalg::parse_element;
use weylcert::polycore::{groebner_basis, MonomialOrder};
use weylcert::orefrac::solve_ore;
use weylcert::rootsys::{weyl_group, RootSystem, TypeLabel, DEFAULT_WEYL_CAP};
use weylcert_bench::{katsura3_mod_32003, sl2_family, weyl_factors};

fn bench_groebner(c: &mut Criterion) {
    let gens = katsura3_mod_32003();
    let order = MonomialOrder::degrevlex();
    c.bench_function("groebner_katsura3_mod_p", |b| {
        b.iter(|| groebner_basis(black_box(&gens), &order).unwrap())
    });
}

fn bench_weyl_mul(c: &mut Criterion) {
    let (a, bb) = weyl_factors();
    c.bench_function("weyl_a2_product_deg5", |b| {
        b.iter(|| black_box(&a).mul(black_box(&bb)).unwrap())
    });
}

fn bench_ore_solve(c: &mut Criterion) {
    let fam = sl2_family();
    let e2h = parse_element(&fam, "e.1^2*h.1 + f.1").unwrap();
    let ef = parse_element(&fam, "e.1*f.1 - 2").unwrap();
    c.bench_function("ore_solve_sl2_deg4", |b| {
        b.iter(|| solve_ore(black_box(&e2h), black_box(&ef), 6).unwrap())
    });
}

fn bench_weyl_group(c: &mut Criterion) {
    let b3 = RootSystem::build(TypeLabel::B, 3).unwrap();
    c.bench_function("weyl_group_b3", |b| {
        b.iter(|| weyl_group(black_box(&b3), DEFAULT_WEYL_CAP).unwrap())
    });
}

fn bench_certificate(c: &mut Criterion) {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../certs/sl2.cert.json"
    ))
    .unwrap();
    let cert = WitnessCertificate::from_json(&text).unwrap();
    c.bench_function("verify_sl2_certificate", |b| {
        b.iter(|| verify_certificate(black_box(&cert), &VerifyConfig::default()))
    });
}

criterion_group!(
    benches,
    bench_groebner,
    bench_weyl_mul,
    bench_ore_solve,
    bench_weyl_group,
    bench_certificate
);
criterion_main!(benches);
