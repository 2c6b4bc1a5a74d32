//! Library surface of the CLI crate: the verification suites and their
//! result types, shared by the binary and its end-to-end tests.

pub mod suites;
