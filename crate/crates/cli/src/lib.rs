//! Command-line front end for pendant-path spectral checks: graph6 and
//! edge-list input, report rendering, and the subcommand drivers.

pub mod commands;
pub mod graph6;
pub mod input;
pub mod report;
