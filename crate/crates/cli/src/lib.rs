//! Command-line front end for `merg-core`: graph files, a multi-threaded
//! exhaustive scan, and scenario runs that emit plot-ready CSV.

pub mod commands;
pub mod io;
pub mod parallel;

pub use parallel::Parallel;
