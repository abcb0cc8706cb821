//! One-parameter regularized Heaviside and delta families, with their
//! pointwise limit laws.
//!
//! Only the erf representation of the smoothed step is provided: its Gaussian
//! tail is what tames `e^{mr}` in the growing radial mode, and other delta
//! sequences would not.

use crate::error::require_finite;
use crate::specfun;
use crate::{Error, Result};

/// Regularization scale ε shared by every smoothed family. Carries the same
/// length units as the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mollification {
    epsilon: f64,
}

impl Mollification {
    /// Creates a mollification scale; rejects ε ≤ 0 and non-finite values.
    pub fn new(epsilon: f64) -> Result<Self> {
        require_finite("epsilon", epsilon)?;
        if epsilon <= 0.0 {
            return Err(Error::domain(format!(
                "epsilon must be strictly positive, got {epsilon}"
            )));
        }
        Ok(Mollification { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Regularized Heaviside step (1/2)·[1 + erf(x/(√2·ε))].
///
/// Strictly increasing in x with range (0, 1); equals 1/2 exactly at x = 0.
pub fn heaviside_reg(x: f64, moll: Mollification) -> Result<f64> {
    require_finite("x", x)?;
    Ok(0.5 * (1.0 + specfun::erf_raw(x / (std::f64::consts::SQRT_2 * moll.epsilon()))))
}

/// Pointwise ε→0 limit of the regularized step: 1 for x > 0, 1/2 at x = 0,
/// 0 for x < 0.
pub fn heaviside_limit(x: f64) -> Result<f64> {
    require_finite("x", x)?;
    Ok(if x > 0.0 {
        1.0
    } else if x == 0.0 {
        0.5
    } else {
        0.0
    })
}

/// Gaussian delta sequence; the analytic x-derivative of [`heaviside_reg`].
pub fn delta_reg(x: f64, moll: Mollification) -> Result<f64> {
    require_finite("x", x)?;
    Ok(specfun::gaussian_raw(x, moll.epsilon()))
}
