//! Criterion benchmarks for the solver and sweep paths live in `benches/`.
