//! Benchmark-only crate; see `benches/corpus.rs`.
