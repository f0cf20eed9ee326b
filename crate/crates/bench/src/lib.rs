//! Criterion benchmarks for the core evaluators; see `benches/`.
