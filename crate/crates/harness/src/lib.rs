//! File formats, Monte Carlo sweeps and the `rsat` command line on top of
//! [`rsat_core`].

pub mod cli;
pub mod format;
pub mod sweep;
