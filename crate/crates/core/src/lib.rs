//! Distribution-free property testing over finite domains.
//!
//! The crate is layered: [`domain`] and [`rational`] hold the data model,
//! [`classes`] answers consistency questions, [`dimension`] and [`distance`]
//! are exact computations over those answers, and [`testers`] and
//! [`hardness`] are the sampling algorithms and instance generators.

pub mod classes;
pub mod dimension;
pub mod distance;
pub mod domain;
pub mod error;
pub mod feasibility;
pub mod hardness;
pub mod linalg;
pub mod rational;
pub mod stats;
pub mod testers;

pub use error::{Error, Result};
