//! Exact scalar and polynomial arithmetic.

pub mod gaussian;
pub mod poly;
pub mod rational;
pub mod theta;

pub use gaussian::GaussianRational;
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use theta::ThetaSpec;
