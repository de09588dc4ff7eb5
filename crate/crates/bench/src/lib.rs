//! Benchmarks for `taper-core`; see `benches/`.
