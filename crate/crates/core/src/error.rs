use thiserror::Error;

/// Errors produced by the field, quadrature, and verification layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument was NaN or infinite where a finite value is required.
    #[error("argument `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// An argument was outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// Gamma evaluated at (or too close to) a non-positive integer.
    #[error("gamma pole at z = {z} (non-positive integer within 1e-3)")]
    GammaPole { z: f64 },

    /// Analytic continuation requested at a pole of Γ(1 − D/2).
    #[error("gamma pole at 1 - D/2 = {z} for dimension D = {d}")]
    DimensionPole { d: f64, z: f64 },

    /// An integrand returned NaN.
    #[error("integrand returned NaN at abscissa {x}")]
    NanIntegrand { x: f64 },

    /// Too few usable data points for a fit.
    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Rejects non-finite arguments with the offending name attached.
pub(crate) fn require_finite(name: &'static str, value: f64) -> crate::Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
