//! Computational toolkit for Calogero-Moser matrix pairs, KP tau and wave
//! functions, quasi-exponential Wronskians, Schur polynomial specializations
//! and rational Cherednik algebra representations, with certified reality
//! checks over an exact Gaussian-rational backend.

pub mod cherednik;
pub mod harness;
pub mod json;
pub mod sample;
pub mod cm;
pub mod schur;
pub mod error;
pub mod scalar;
pub mod tau;
pub mod poly;
pub mod quasi;
pub mod roots;
pub mod matrix;
pub mod multipoly;
pub mod ratfun;

pub use error::{CoreError, Result};
pub use matrix::{realify_conjugation, Matrix, Spectrum};
pub use multipoly::MultiPoly;
pub use poly::UniPoly;
pub use ratfun::{RatFun, RatSeries};
pub use roots::{exact_roots, poly_roots, real_roots_certified};
pub use scalar::{set_tol, tol, ApproxScalar, ExactScalar, Scalar};
