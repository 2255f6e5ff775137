//! Benchmark-only crate; see `benches/relations.rs`.
