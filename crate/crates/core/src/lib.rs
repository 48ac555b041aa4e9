//! Evaluators, exact series, region logic, a sharpness laboratory and
//! bivariate means for the inequalities between `sinh x / x` and powers or
//! generalized logarithms of `cosh x`.
//!
//! The evaluators and the means are generic over [`scalar::Scalar`] (`f32`,
//! `f64`); the region logic is generic over any ordered field and is normally
//! run on exact rationals. The aliases below fix the scalar to `f64`.

pub mod acceptance;
pub mod error;
pub mod hyp;
pub mod lab;
pub mod means;
pub mod region;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exponent pair in `f64`.
pub type Pair = hyp::ParamPair<f64>;
/// Evaluation point in `f64`.
pub type Point = hyp::EvalPoint<f64>;
/// Tagged function value in `f64`.
pub type Value = hyp::FnValue<f64>;
/// Values of `A`, `B`, `C` in `f64`.
pub type Abc = hyp::Abc<f64>;
/// Mean value in `f64`.
pub type MeanValue = means::MeanValue<f64>;
/// Bounds of the Schwab-Borchardt mean in `f64`.
pub type MeanBounds = means::MeanBounds<f64>;
/// Exact rationals used by the region logic and the series oracle.
pub type Rational = num_rational::BigRational;
