use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaussauto::automata::{dfa_oracle_disagreement, integers_dfa, integers_oracle, powers_oracle, residual_signatures};
use gaussauto::selfcheck::random_dfa;
use gaussauto::{canonical_digit_set, GaussInt, ProductMode};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

fn minimize(c: &mut Criterion) {
    let ds = canonical_digit_set(&g(2, 1)).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut group = c.benchmark_group("minimize");
    for n in [16, 128, 1024] {
        let d = random_dfa(&ds, n, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| d.minimize()));
    }
    group.finish();
}

fn product(c: &mut Criterion) {
    let ds = canonical_digit_set(&g(2, 1)).unwrap();
    let mut rng = StdRng::seed_from_u64(8);
    let (x, y) = (random_dfa(&ds, 64, &mut rng), random_dfa(&ds, 64, &mut rng));
    c.bench_function("product xor 64x64", |b| b.iter(|| x.product(&y, ProductMode::Xor).unwrap()));
    c.bench_function("equivalent 64x64", |b| b.iter(|| x.equivalent(&y).unwrap()));
}

fn harnesses(c: &mut Criterion) {
    let ds = canonical_digit_set(&g(2, 1)).unwrap();
    let oracle = powers_oracle(&g(1, 2), &ds).unwrap();
    let mut group = c.benchmark_group("harnesses");
    group.sample_size(10);
    for k in [2, 4] {
        group.bench_with_input(BenchmarkId::new("residual_signatures e=3", k), &k, |b, &k| {
            b.iter(|| residual_signatures(&oracle, k, 3).unwrap().class_count)
        });
    }
    let d = integers_dfa(&g(3, 0)).unwrap();
    let ints = integers_oracle(d.alphabet());
    group.bench_function("disagreement integers base 3, len 5", |b| {
        b.iter(|| dfa_oracle_disagreement(&d, &ints, 5).unwrap())
    });
    group.finish();
}

criterion_group!(benches, minimize, product, harnesses);
criterion_main!(benches);
