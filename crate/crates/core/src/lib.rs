//! Exact-arithmetic tools for finite interval tests, left-c.e. approximations
//! and the covering constructions built from them.

pub mod approx;
pub mod boundtest;
pub mod error;
pub mod interval;
pub mod limittest;
pub mod measure;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod step;
pub mod uniqueness;

pub use error::{Error, Result};
pub use interval::{FiniteTest, Interval, IntervalKind};
pub use rational::Rational;
pub use step::StepFunction;
