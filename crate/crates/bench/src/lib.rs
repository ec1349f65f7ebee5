//! Benchmarks for the numerical kernels live in `benches/`; run them with
//! `cargo bench -p itc-bench`.
