//! Library half of the `ratefid` command-line tool.

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;
