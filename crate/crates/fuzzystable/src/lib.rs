//! File formats, a multi-threaded witness scanner, the property harness
//! and the command-line front end for `fuzzystable-core`.

pub mod cli;
pub mod io;
pub mod parallel;
pub mod props;

pub use fuzzystable_core as core;
