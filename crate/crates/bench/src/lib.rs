//! Benchmarks for `aut-core`; see `benches/`.
