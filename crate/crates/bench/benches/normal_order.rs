use std::hint::black_box;

use bolano_cli::workload::workload;
use bolano_core::io::parse_poly;
use bolano_core::oracle::flatten_and_swap_no;
use bolano_core::{normal_order, ParallelConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn monomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("monomials_2_modes");
    let cfg = ParallelConfig::serial();
    for ops in [6, 10, 14] {
        let words = workload(1, ops, 2, 50);
        group.bench_with_input(BenchmarkId::new("blasiak", ops), &words, |b, words| {
            b.iter(|| {
                for w in words {
                    black_box(normal_order(black_box(w), &cfg));
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("baseline", ops), &words, |b, words| {
            b.iter(|| {
                for w in words {
                    black_box(flatten_and_swap_no(black_box(w)));
                }
            })
        });
    }
    group.finish();
}

fn polynomial(c: &mut Criterion) {
    let p = parse_poly("(b_1 + bd_2 + x*b_2*bd_1)^6").unwrap();
    let mut group = c.benchmark_group("polynomial");
    for workers in [1, 2, 4] {
        let mut cfg = ParallelConfig::with_workers(workers);
        cfg.enable = workers > 1;
        group.bench_with_input(BenchmarkId::new("workers", workers), &cfg, |b, cfg| {
            b.iter(|| black_box(normal_order(black_box(&p), cfg)))
        });
    }
    group.finish();
}

criterion_group!(benches, monomials, polynomial);
criterion_main!(benches);
