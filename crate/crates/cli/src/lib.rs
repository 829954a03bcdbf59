//! Experiment harness around the `fqt-core` library: configuration,
//! experiment records, the seeded verification suites and the command
//! implementations behind the `fqt` binary.

pub mod config;
pub mod report;
pub mod run;
pub mod suites;
