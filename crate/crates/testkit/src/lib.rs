//! Fixtures, random generators and reference oracles for the test suites.

pub mod fixtures;
pub mod gen;
pub mod oracle;
