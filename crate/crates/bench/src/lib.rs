//! Criterion benchmarks for galcon; see `benches/galcon.rs`.
