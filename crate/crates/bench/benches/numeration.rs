use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gaussauto::dependence::{group_witness, prefix_extension};
use gaussauto::numeration::{lattice_disc, power_digit_set, recode};
use gaussauto::{canonical_digit_set, factorize, mult_dependent, GaussInt};
use num_bigint::BigInt;

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

fn encode_disc(c: &mut Criterion) {
    let disc = lattice_disc(&BigInt::from(2500));
    let mut group = c.benchmark_group("encode_disc_2500");
    for b in [g(2, 1), g(-1, 2), g(3, 0), g(1, 3)] {
        let ds = canonical_digit_set(&b).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&b), &ds, |bench, ds| {
            bench.iter(|| disc.iter().map(|z| ds.encode(z).unwrap().len()).sum::<usize>())
        });
    }
    group.finish();
}

fn large_values(c: &mut Criterion) {
    let ds = canonical_digit_set(&g(2, 1)).unwrap();
    let z = g(1, 2).pow(200);
    let w = ds.encode(&z).unwrap();
    c.bench_function("encode (1+2i)^200", |b| b.iter(|| ds.encode(black_box(&z)).unwrap()));
    c.bench_function("decode (1+2i)^200", |b| b.iter(|| ds.decode(black_box(&w)).unwrap()));
    let p3 = power_digit_set(&ds, 3).unwrap();
    c.bench_function("recode (1+2i)^200 to b^3", |b| b.iter(|| recode(black_box(&w), &ds, 3).unwrap()));
    c.bench_function("encode (1+2i)^200 over b^3", |b| b.iter(|| p3.encode(black_box(&z)).unwrap()));
}

fn digit_sets(c: &mut Criterion) {
    c.bench_function("canonical_digit_set norm 5..=100", |bench| {
        let bases = lattice_disc(&BigInt::from(100));
        bench.iter(|| {
            bases.iter().filter(|b| b.norm() >= BigInt::from(5)).map(|b| canonical_digit_set(b).unwrap().len()).sum::<usize>()
        })
    });
}

fn arithmetic(c: &mut Criterion) {
    let z = g(1_234_567, -7_654_321);
    c.bench_function("factorize norm ~6e13", |b| b.iter(|| factorize(black_box(&z)).unwrap()));
    let (a, b) = (g(3, 4).pow(6), g(2, 1).pow(12));
    c.bench_function("mult_dependent dependent", |bench| bench.iter(|| mult_dependent(black_box(&a), &b).unwrap()));
}

fn witnesses(c: &mut Criterion) {
    let (a, b) = (g(1, 2), g(2, 1));
    let mut group = c.benchmark_group("witnesses");
    group.sample_size(20);
    group.bench_function("group_witness 1/25", |bench| {
        bench.iter(|| group_witness(&a, &b, &GaussInt::one(), &BigInt::from(1), &BigInt::from(25), 256).unwrap())
    });
    group.bench_function("prefix_extension u=1", |bench| {
        bench.iter(|| prefix_extension(&a, &b, &GaussInt::one(), 3, 256).unwrap())
    });
    group.finish();
}

criterion_group!(benches, encode_disc, large_values, digit_sets, arithmetic, witnesses);
criterion_main!(benches);
