//! File formats, parallel enumeration and the command-line front-end for
//! [`lasso_density_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{parse_automaton, write_automaton, FormatError, ParseOptions};
pub use parallel::Workers;
