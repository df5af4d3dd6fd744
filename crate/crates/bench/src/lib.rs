//! Criterion benchmarks for `gl2pv`; see `benches/sums.rs`.
