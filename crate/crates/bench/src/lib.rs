//! Criterion benchmarks for the normal-ordering pipeline live in `benches/`.
