//! Exact computations on moment varieties of mixtures of product
//! distributions: toric parametrizations, dimensions, binomial generators,
//! secant dimension bounds, special equations and empirical test statistics.

pub mod equations;
pub mod error;
pub mod field;
pub mod linalg;
pub mod moments;
pub mod secant;
pub mod stats;
pub mod toric;

pub use error::{Error, Result};
