//! Numerical toolkit for first-order differential subordination and
//! superordination on p-valent analytic functions of the unit disk.
//!
//! The numeric core ([`series`], [`zoo`], [`disk`], [`operators`], [`lemmas`])
//! is generic over the real scalar ([`Real`], implemented for `f32` and `f64`).
//! The theorem harness, report layer and CLI run in double precision through the
//! aliases below.

pub mod cli;
pub mod disk;
pub mod dsl;
pub mod error;
pub mod harness;
pub mod lemmas;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod series;
pub mod zoo;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision complex scalar.
pub type ComplexValue = num_complex::Complex<f64>;
/// Double-precision truncated power series.
pub type PowerSeries = series::Series<f64>;
/// Single-precision truncated power series.
pub type PowerSeries32 = series::Series<f32>;
/// Double-precision analytic map object.
pub type DynMap = dyn zoo::AnalyticMap<f64>;
/// Double-precision p-valent function description.
pub type PValentFunction = zoo::PValentSpec<f64>;
/// Double-precision dominant family description.
pub type DominantSpec = zoo::DominantSpec<f64>;
/// Double-precision operator parameters.
pub type OperatorParams = operators::OperatorParams<f64>;
/// Double-precision class parameters.
pub type ClassParams = operators::ClassParams<f64>;
