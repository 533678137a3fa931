//! Command-line front end: presentation files in, deterministic reports out.

pub mod commands;
pub mod dsl;
pub mod report;
