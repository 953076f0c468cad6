//! Exact computations in the Onsager algebra.
//!
//! The algebra is realized inside the sl₂ loop algebra as elements
//! `p(t)e + p(1/t)f + q(t)h` with `q(1/t) = -q(t)`. On top of that
//! realization the crate builds closed ideals from reciprocal polynomials,
//! finite quotients with explicit structure constants, evaluation
//! representations, and a numerical study of the superintegrable chiral
//! Potts chain.

pub mod algebra;
pub mod chiralpotts;
pub mod combinat;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod poly;
pub mod quotients;
pub mod reps;
pub mod scalar;
pub mod verify;

pub use algebra::{dg_check, generator_a, generator_g, LieBracket, OAElement, Sl2Coord};
pub use error::{Error, Result};
pub use ideals::{IdealHandle, ReciprocalPoly};
pub use linalg::{EchelonBasis, Matrix};
pub use poly::{LaurentPoly, TruncatedSeries};
pub use scalar::{Rational, Scalar};
