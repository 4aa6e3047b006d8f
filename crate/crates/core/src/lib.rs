//! Parallel cost of random population-protocol rounds.
//!
//! A round of random pairwise interactions can be executed in as many parallel
//! steps as its longest monotone interference chain. This crate samples
//! rounds, measures that chain, schedules rounds level by level or as
//! `k`-parallel matchings against black-box transition functions, and
//! compares the measurements with the `log n / log log n` bounds.

pub mod analysis;
pub mod dependency;
pub mod engine;
mod error;
pub mod model;
pub mod rng;
pub mod trials;

pub use error::{Error, Result};
pub use rng::RngStream;
