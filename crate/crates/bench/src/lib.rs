//! Criterion benchmarks for `stablenorm`; see `benches/`.
