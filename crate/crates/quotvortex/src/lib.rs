//! File formats, deterministic parallel evaluation, random sampling, the
//! self-check harness and the command-line frontend for
//! [`quotvortex_core`].

pub mod cli;
pub mod json;
pub mod meromap;
pub mod parallel;
pub mod render;
pub mod sample;
pub mod selfcheck;

pub use quotvortex_core as core;
