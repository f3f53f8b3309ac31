//! File formats, scenario configuration, the seeded Monte Carlo driver and
//! the command-line front end for `coincidence-core`.

pub mod check;
pub mod cli;
pub mod config;
pub mod formats;
pub mod montecarlo;
pub mod report;

pub use coincidence_core;
