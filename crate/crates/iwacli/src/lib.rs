//! Command-line front end for the `iwacore` library: file formats,
//! report serialization, and the commands themselves.

pub mod commands;
pub mod format;
pub mod report;
