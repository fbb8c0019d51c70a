//! Criterion benchmarks live in benches/engine.rs; this crate has no
//! library surface of its own.
