//! Reconstruction of heterogeneous random hypergraphs from their graph projections.
//!
//! The crate covers the generative ensemble ([`model`]), maximal-clique
//! estimation ([`estimator`]), scoring and the achievability threshold
//! ([`metrics`]), exact cover exponents on small edge sets ([`cover_oracle`]),
//! finite-n probability formulas with Monte Carlo checks ([`probability`]), and
//! seeded experiment sweeps ([`harness`]).
//!
//! Cover and threshold arithmetic is generic over [`Scalar`]: use [`Rational`]
//! when exact equality matters and `f64` otherwise.

pub mod combinatorics;
pub mod cover_oracle;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod probability;
pub mod scalar;
pub mod seeds;
pub mod textio;

pub use error::{Error, Result};
pub use scalar::{Ext, Scalar};

/// Exact scalar for grid-point δ values.
pub type Rational = num_rational::Ratio<i64>;
/// Cover exponent in exact arithmetic.
pub type ExactG = Ext<Rational>;
/// Cover exponent in double precision.
pub type RealG = Ext<f64>;
/// Δ-profile over exact rationals.
pub type ExactProfile = cover_oracle::DeltaProfile<Rational>;
/// Δ-profile over doubles.
pub type RealProfile = cover_oracle::DeltaProfile<f64>;
