//! Numerical toolkit for the stationary Klein-Gordon equation with a point
//! delta source.
//!
//! The stationary equation `(∇² − m²)φ = −4πδ³(r)` is solved by the Yukawa
//! potential `e^{−mr}/r` away from the origin. This crate builds the
//! mollified families that extend that solution to the whole space — the
//! regularized Yukawa `e^{−mr}/√(r²+ε²)` and the erf-weighted combination
//! `Φ(r,ε)` of the decaying and growing radial modes — together with the
//! machinery needed to verify their distributional limits numerically:
//!
//! - [`specfun`]: error function, real Gamma with negative-argument
//!   continuation, Gaussian kernel.
//! - [`mollifier`]: regularized Heaviside/delta families and their limits.
//! - [`fields`]: the field families and closed-form Klein-Gordon residuals,
//!   plus a finite-difference operator cross-check.
//! - [`quad`]: adaptive Gauss-Kronrod quadrature on radial densities and
//!   finite intervals, and log-log convergence-order fitting.
//! - [`dimreg`]: Fourier-side results — dimensional-regularization value at
//!   the origin, momentum-cutoff comparison, oscillatory radial inversion.
//! - [`verifier`]: weak-form pairings against test functions, the four
//!   verification integrals, and delta-defect sweeps.

pub mod dimreg;
mod error;
pub mod fields;
pub mod mollifier;
pub mod quad;
pub mod specfun;
pub mod verifier;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
