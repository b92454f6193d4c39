//! Library surface of the dgtor command line: span-spec parsing, the fixture
//! registry, the runner, and report documents.

pub mod fixtures;
pub mod report;
pub mod runner;
pub mod selftest;
pub mod spec;
