use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion, Throughput};
use unitri_bench::{input, Workload, BENCH_RANK};
use unitri_core::Word;

fn reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    group.sample_size(10);
    for workload in Workload::ALL {
        for len in [100_000, 1_000_000] {
            let raw = input(workload, len, 7);
            group.throughput(Throughput::Elements(raw.len() as u64));
            group.bench_with_input(BenchmarkId::new(workload.name(), len), &raw, |b, raw| {
                b.iter_batched(
                    || raw.clone(),
                    |raw| Word::reduce(raw, BENCH_RANK).unwrap(),
                    BatchSize::LargeInput,
                )
            });
        }
    }
    group.finish();
}

criterion_group!(benches, reduce);
criterion_main!(benches);
