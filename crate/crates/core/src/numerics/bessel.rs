use super::quadrature::{integrate_semi_infinite_with_breaks, QuadratureConfig};
use crate::error::{Error, Result};

/// Modified Bessel function `K_1(z)` for real `z > 0`.
///
/// Evaluated from `K_1(z) = ∫_0^∞ exp(-z cosh t) cosh t dt` with the
/// crate's own quadrature, so it shares nothing with the Mellin–Barnes
/// path it is used to check. The factor `e^{-z}` is pulled out so large
/// arguments keep full relative accuracy.
pub fn bessel_k1(z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("bessel_k1 requires z > 0, got {z}")));
    }
    let integrand = |t: f64| {
        let h = t * 0.5;
        let excess = 2.0 * h.sinh().powi(2); // cosh t - 1 without cancellation
        let e = -z * excess;
        if e < -745.0 {
            0.0
        } else {
            e.exp() * t.cosh()
        }
    };
    // mass sits where z (cosh t - 1) ~ 1
    let knee = (1.0 + 1.0 / z).acosh();
    let cfg = QuadratureConfig {
        abs_tol: f64::MIN_POSITIVE,
        rel_tol: 1e-13,
        max_subdivisions: 400,
        split: 1.0,
    };
    let r = integrate_semi_infinite_with_breaks(integrand, 0.0, &[knee, 4.0 * knee], &cfg)?;
    Ok(r.value * (-z).exp())
}
