//! Criterion benchmarks for `bvtrace-core`; see `benches/`.
