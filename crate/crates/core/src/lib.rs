//! Discrete-time quantum walks on the integer line and the spectral theory of
//! their limit measures: Konno densities, moments, Stieltjes transforms,
//! Jacobi coefficients and monic orthogonal polynomials, each paired with an
//! independent numerical oracle.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// tests compare against published decimals such as 0.7071 and 0.3183099
#![cfg_attr(test, allow(clippy::approx_constant))]

pub mod acceptance;
pub mod cli;
pub mod coin;
pub mod density;
pub mod error;
pub mod fixtures;
pub mod jacobi;
pub mod moments;
pub mod orthopoly;
pub mod output;
pub mod quadrature;
pub mod stieltjes;
pub mod walk;

pub use coin::{Coin, LimitParams, QubitState};
pub use density::MeasureSpec;
pub use error::{Error, Result};
pub use jacobi::JacobiSeq;
pub use moments::MomentSeq;
