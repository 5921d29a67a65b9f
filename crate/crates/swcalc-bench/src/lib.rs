//! Benchmark-only crate; the measurements live in `benches/pipelines.rs`.
//! Run with `cargo bench -p swcalc-bench`.
