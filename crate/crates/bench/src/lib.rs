//! Criterion benchmarks for the `fanoball` kernels; see `benches/`.
