//! Exact rational-homotopy computations for homogeneous spaces `G/H` and
//! biquotients `G//K` of compact connected Lie groups.
//!
//! The building blocks are generic over an exact [`Scalar`] field; the
//! aliases below fix it to arbitrary-precision rationals.

pub mod atlas;
pub mod cdga;
mod error;
pub mod cohomology;
pub mod descriptor;
pub mod formality;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod modular;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

pub type Element = cdga::Element<Rational>;
pub type FreeCdga = cdga::FreeCdga<Rational>;
pub type SparseMatrix = linalg::SparseMatrix<Rational>;
pub type PureModel = models::PureModel<Rational>;
pub type MinimalPureModel = models::MinimalPureModel<Rational>;
pub type BettiTable = cohomology::BettiTable<Rational>;
pub type MasseyResult = cohomology::MasseyResult<Rational>;
pub type FormalityVerdict = formality::FormalityVerdict<Rational>;
pub type SplittingWitness = formality::SplittingWitness<Rational>;
