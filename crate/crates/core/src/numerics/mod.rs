//! Foundational kernels: complex log-gamma, adaptive Gauss–Kronrod
//! quadrature on finite and semi-infinite ranges, and a quadrature-based
//! modified Bessel function `K_1` used as an independent oracle.

mod bessel;
mod gamma;
mod quadrature;

pub use bessel::bessel_k1;
pub use gamma::{gamma_real, log_gamma, log_gamma_real};
pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_semi_infinite_with_breaks, QuadratureConfig,
};

use crate::error::{Error, Result};

/// Complex number used for Mellin variables and gamma arguments.
pub type ComplexValue = num_complex::Complex64;

pub(crate) fn check_finite(s: ComplexValue, what: &str) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite, got {s}")))
    }
}

/// Outcome of an adaptive numerical evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    pub value: T,
    /// Absolute error estimate, always `>= 0`.
    pub err_estimate: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
    /// Whether the requested tolerance was met.
    pub converged: bool,
}

impl<T> EvalResult<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> EvalResult<U> {
        EvalResult {
            value: f(self.value),
            err_estimate: self.err_estimate,
            evaluations: self.evaluations,
            converged: self.converged,
        }
    }
}

impl EvalResult<f64> {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value,
                err_estimate: self.err_estimate,
                evaluations: self.evaluations,
            })
        }
    }

    /// Scales value and error by a constant factor.
    pub fn scaled(self, factor: f64) -> Self {
        EvalResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            ..self
        }
    }
}
