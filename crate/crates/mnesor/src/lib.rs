//! Command-line workbench for mnesor spaces: fixture files, JSON reports
//! and the `mnesor` binary's commands.

pub mod app;
pub mod fixture;
pub mod model;
pub mod report;
