//! Exact-arithmetic toolkit for Miyaoka-Kobayashi (MK) curves.
//!
//! A plane curve of even degree `n >= 6` with only ADE singularities is an MK
//! curve when the Miyaoka-Kobayashi numbers of its singular points sum to
//! `(n/2)(5n - 6)`. This crate evaluates singularity profiles against that
//! condition and searches for (or rules out) candidate profiles in a given
//! degree, by enumerating solutions of the MK equation and pushing each one
//! through a pipeline of certified constraints.
//!
//! All arithmetic is exact. The core is generic over [`Scalar`]; the
//! arbitrary-precision instantiation is [`Rational`], and [`Rational128`] is a
//! fixed-width variant for fast sweeps at moderate degree.

pub mod catalog;
pub mod constraints;
pub mod error;
pub mod gallery;
pub mod hunter;
pub mod profile;
pub mod scalar;
pub mod suite;

pub use catalog::SingularityClass;
pub use constraints::{ConstraintName, ConstraintVerdict, Pipeline, Status};
pub use error::{Error, Result};
pub use hunter::{hunt, HuntReport, HuntRequest, Hunter};
pub use profile::{ProfileEvaluation, SingularityProfile};
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Arbitrary-precision exact rational.
pub type Rational = Ratio<BigInt>;

/// Exact rational over 128-bit integers. Panics on overflow rather than
/// rounding.
pub type Rational128 = Ratio<i128>;

pub type Evaluation = ProfileEvaluation<Rational>;
pub type Verdict = ConstraintVerdict<Rational>;
pub type Report = HuntReport<Rational>;
