//! Benchmarks for the enumeration engine; see `benches/`.
