//! Criterion benchmarks for `curvode-core`; see `benches/`.
