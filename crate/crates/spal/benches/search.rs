use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use spal::palcount::count_spal;
use spal::verify::{exhaustive_max, SearchConfig};
use spal::Word;

fn bench_count_kernel(c: &mut Criterion) {
    let word: Word = "abcabcabcabcabcabcab".parse().unwrap();
    c.bench_function("count_spal/n20_q3", |b| {
        b.iter(|| count_spal(black_box(&word)).unwrap())
    });
}

/// Sequential vs parallel sweep of one search cell; the two must agree
/// bit for bit, so this measures scheduling overhead against speedup.
fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_max/n10_q5");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        let config = SearchConfig {
            budget_n: 10,
            jobs: Some(1),
        };
        b.iter(|| exhaustive_max(10, 5, &config).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        let config = SearchConfig {
            budget_n: 10,
            jobs: None,
        };
        b.iter(|| exhaustive_max(10, 5, &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_count_kernel, bench_search);
criterion_main!(benches);
