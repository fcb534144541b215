use std::hint::black_box;

use bec::parallel::sample_sharded_sequential;
#[cfg(feature = "parallel")]
use bec::parallel::sample_sharded_parallel;
use bec::{table1, Algorithm, BecParams, QuadratureSettings, Sampler, UniformSource};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const DRAWS: usize = 100_000;
const SHARDS: usize = 8;

fn single_draws(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_stream");
    group.throughput(Throughput::Elements(DRAWS as u64));
    for delta in [0.5, 10.0, 100.0] {
        let params = BecParams::standard(delta).unwrap();
        for alg in [Algorithm::A, Algorithm::B { c: 0.7 }, Algorithm::C] {
            let sampler = Sampler::new(params, alg).unwrap();
            group.bench_with_input(
                BenchmarkId::new(alg.label(), delta),
                &sampler,
                |b, s| {
                    b.iter(|| {
                        let mut src = UniformSource::new(1);
                        black_box(s.sample_many(DRAWS, &mut src).unwrap())
                    })
                },
            );
        }
    }
    group.finish();
}

fn sharded(c: &mut Criterion) {
    let mut group = c.benchmark_group("sharded");
    group.throughput(Throughput::Elements(DRAWS as u64 * 10));
    let params = BecParams::standard(10.0).unwrap();
    for alg in [Algorithm::A, Algorithm::Auto] {
        group.bench_function(BenchmarkId::new("sequential", alg.label()), |b| {
            b.iter(|| black_box(sample_sharded_sequential(&params, DRAWS * 10, alg, 1, SHARDS).unwrap()))
        });
        #[cfg(feature = "parallel")]
        group.bench_function(BenchmarkId::new("parallel", alg.label()), |b| {
            b.iter(|| black_box(sample_sharded_parallel(&params, DRAWS * 10, alg, 1, SHARDS).unwrap()))
        });
    }
    group.finish();
}

fn rate_table(c: &mut Criterion) {
    let settings = QuadratureSettings::default();
    c.bench_function("table1", |b| b.iter(|| black_box(table1::compute(&settings).unwrap())));
}

criterion_group!(benches, single_draws, sharded, rate_table);
criterion_main!(benches);
