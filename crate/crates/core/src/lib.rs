//! Numerical toolkit for cotype, summing norms and s-numbers of
//! finite-dimensional normed spaces.
//!
//! Everything is generic over the scalar via [`scalar::Real`]; the aliases at
//! the crate root fix `f64`, with `*32` variants for single precision.

pub mod error;
pub mod estimate;
pub mod growth;
pub mod linalg;
pub mod matrix;
pub mod optimal;
pub mod scalar;
pub mod search;
pub mod signs;
pub mod snumbers;
pub mod summing;
pub mod weak;
pub mod averages;
pub mod descriptor;
pub mod report;
pub mod linmap;
pub mod pipeline;
pub mod seq;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use estimate::{Budget, Direction, Witness};
pub use scalar::Real;

pub type Sequence = seq::Sequence<f64>;
pub type GrowthSequence = growth::GrowthSequence<f64>;
pub type SymmetricSpace = seq::SymmetricSpace<f64>;
pub type NormedSpace = space::NormedSpace<f64>;
pub type Matrix = matrix::Matrix<f64>;
pub type Estimate = estimate::Estimate<f64>;

pub type Sequence32 = seq::Sequence<f32>;
pub type GrowthSequence32 = growth::GrowthSequence<f32>;
pub type NormedSpace32 = space::NormedSpace<f32>;
pub type Matrix32 = matrix::Matrix<f32>;
pub type LinearMap = linmap::LinearMap<f64>;
pub type SuiteReport = report::SuiteReport;
pub type LinearMap32 = linmap::LinearMap<f32>;
