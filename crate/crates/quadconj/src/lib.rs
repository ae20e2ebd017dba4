//! Command-line front end, JSON output and parallel census for
//! `quadconj-core`.

pub mod census;
pub mod cli;
pub mod fixtures;
pub mod json;
