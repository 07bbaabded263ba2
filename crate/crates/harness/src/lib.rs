//! Command-line plumbing around `vctest-core`: instance files, string specs,
//! Monte-Carlo sweeps, record output and the verification suites.

pub mod config;
pub mod emit;
pub mod error;
pub mod instance;
pub mod specs;
pub mod sweep;
pub mod verify;

pub use error::{HarnessError, Result};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "VCTEST_SEED";
