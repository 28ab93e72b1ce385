pub mod cli;
pub mod distributions;
pub mod error;
pub mod exponents;
pub mod harness;
pub mod lauricella;
pub mod math;
pub mod predictors;
pub mod quadrature;
pub mod rng;
pub mod roots;
pub mod samples;

pub use error::{Error, Result};
