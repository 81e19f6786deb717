//! File formats, verification campaigns and the command-line front end for
//! the `estrada-core` bounds library.

pub mod cli;
pub mod harness;
pub mod io;
pub mod report;
