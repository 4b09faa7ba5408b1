//! File formats and the command-line front end for [`schweitzer_core`].

pub mod cli;
pub mod format;
pub mod render;

pub use schweitzer_core as core;
