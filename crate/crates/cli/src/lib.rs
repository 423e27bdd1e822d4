//! Shared pieces of the `nilgeom` command-line tool.

pub mod acceptance;
