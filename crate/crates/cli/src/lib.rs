//! Library surface of the braidmm tool: config schema, runners, reports and
//! the content-addressed cache. The binary in `main.rs` is a thin wrapper.

pub mod cache;
pub mod config;
pub mod report;
pub mod runner;
