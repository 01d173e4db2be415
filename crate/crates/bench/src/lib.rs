//! Criterion benchmarks for pdchain; see `benches/`.
