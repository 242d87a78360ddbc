//! Criterion benchmarks for `ogq-core`; the targets live in `benches/`.
