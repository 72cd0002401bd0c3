//! Criterion benchmarks for the distance kernels; see `benches/metric.rs`.
