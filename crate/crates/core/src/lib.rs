//! Numerical machinery for random symmetric Toeplitz matrices: circulant
//! embedding, projection-conjugated diagonal representation, Stieltjes
//! transforms of expected spectral distributions, spectral-averaging bounds
//! and Monte Carlo density estimation of the limiting eigenvalue law.

// `!(x > 0.0)` deliberately rejects NaN; quadrature nodes keep full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod ensemble;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod measures;
pub mod montecarlo;
pub mod quadrature;
pub mod wegner;

pub use error::{Result, SpectraError};
