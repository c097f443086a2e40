//! Exact symbolic computation of the algebraic boundary of the convex hull of
//! a rational space curve.
//!
//! The pipeline turns a curve (trigonometric or binary-form parametrization)
//! into the components of its edge surface, the union of all stationary
//! bisecant lines, and into the Chow form of its tritangent planes. The
//! [`degrees`] module predicts the sizes of these objects from the degree,
//! genus and singularities of the curve.

pub mod cli;
pub mod curve;
pub mod degrees;
pub mod edgesurface;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod polyring;
pub mod tritangent;

pub use error::{Error, Result};
pub use polyring::{Polynomial, Rational, Ring};
