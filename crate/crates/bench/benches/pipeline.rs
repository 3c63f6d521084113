//! Whole-pipeline timings per input family, with throughput in symbols so
//! the reports show how close the analysis stays to linear.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use seedex::families::Family;
use seedex::Analysis;
use seedex_bench::input;

fn quasigaps(c: &mut Criterion) {
    let mut group = c.benchmark_group("quasigaps");
    group.sample_size(10);
    for family in Family::ALL {
        for exp in [12, 14, 16] {
            let n = 1usize << exp;
            let text = input(family, n);
            group.throughput(Throughput::Elements(n as u64));
            group.bench_with_input(
                BenchmarkId::new(family.name(), n),
                &text,
                |b, text| b.iter(|| Analysis::new(text.clone())),
            );
        }
    }
    group.finish();
}

fn seed_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("seed_report");
    group.sample_size(10);
    for family in Family::ALL {
        let n = 1usize << 14;
        let analysis = Analysis::new(input(family, n));
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(
            BenchmarkId::new(family.name(), n),
            &analysis,
            |b, a| b.iter(|| a.all_seeds()),
        );
    }
    group.finish();
}

criterion_group!(benches, quasigaps, seed_report);
criterion_main!(benches);
