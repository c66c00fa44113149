//! The Fréchet family `Fr(γ, x) = γ x^{-(1+γ)} exp(-x^{-γ})` and the
//! one-sided Lévy stable facts needed alongside it.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::gamma_real;

/// Positive, finite shape parameter `γ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Shape(f64);

impl Shape {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(Shape(gamma))
        } else {
            Err(Error::Domain(format!(
                "shape must be positive and finite, got {gamma}"
            )))
        }
    }

    pub fn gamma(self) -> f64 {
        self.0
    }
}

impl From<RationalShape> for Shape {
    fn from(r: RationalShape) -> Self {
        Shape(r.gamma())
    }
}

/// Rational shape `γ = l/k`, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalShape {
    l: u32,
    k: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalShape {
    pub fn new(l: u32, k: u32) -> Result<Self> {
        if l == 0 || k == 0 {
            return Err(Error::Domain(format!(
                "l and k must be positive integers, got {l}/{k}"
            )));
        }
        let g = gcd(l, k);
        Ok(RationalShape { l: l / g, k: k / g })
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn gamma(self) -> f64 {
        self.l as f64 / self.k as f64
    }

    /// The shape `k/l`, i.e. the reciprocal.
    pub fn swapped(self) -> Self {
        RationalShape { l: self.k, k: self.l }
    }
}

impl fmt::Display for RationalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.l, self.k)
    }
}

/// Stability index of a one-sided Lévy law, `0 < alpha < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LevyIndex(f64);

impl LevyIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(LevyIndex(alpha))
        } else {
            Err(Error::Domain(format!(
                "Levy index must satisfy 0 < alpha < 1, got {alpha}"
            )))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {x}")))
    }
}

/// Fréchet density. Returns `0` at `x = 0` (the limit at the essential
/// singularity) and for `x = ∞`.
pub fn frechet_pdf(shape: Shape, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("frechet_pdf requires x >= 0, got {x}")));
    }
    if x == 0.0 || x.is_infinite() {
        return Ok(0.0);
    }
    let g = shape.gamma();
    let ln_x = x.ln();
    let log_pdf = g.ln() - (1.0 + g) * ln_x - (-g * ln_x).exp();
    Ok(log_pdf.exp())
}

pub fn frechet_cdf(shape: Shape, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("frechet_cdf requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok((-x.powf(-shape.gamma())).exp())
}

pub fn frechet_quantile(shape: Shape, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie in (0, 1), got {q}"
        )));
    }
    Ok((-q.ln()).powf(-1.0 / shape.gamma()))
}

/// `∫_0^∞ x^μ Fr(γ, x) dx = Γ(1 - μ/γ)`, finite for `μ < γ`.
pub fn frechet_moment(shape: Shape, mu: f64) -> Result<f64> {
    if mu.is_nan() {
        return Err(Error::Domain("moment order is NaN".into()));
    }
    let g = shape.gamma();
    if mu >= g {
        return Err(Error::DivergentMoment { mu, bound: g });
    }
    gamma_real(1.0 - mu / g)
}

/// One-sided Lévy stable density at `alpha = 1/2`,
/// `x^{-3/2} exp(-1/(4x)) / (2√π)`, whose Laplace transform is `exp(-√p)`.
pub fn levy_pdf_half(x: f64) -> Result<f64> {
    check_positive(x, "levy_pdf_half argument")?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    let log_pdf = -(2.0 * PI.sqrt()).ln() - 1.5 * x.ln() - 0.25 / x;
    Ok(log_pdf.exp())
}

/// `∫_0^∞ x^μ g_α(x) dx = Γ(1 - μ/α) / Γ(1 - μ)`, finite for `μ < α`.
pub fn levy_moment(idx: LevyIndex, mu: f64) -> Result<f64> {
    if mu.is_nan() {
        return Err(Error::Domain("moment order is NaN".into()));
    }
    let a = idx.alpha();
    if mu >= a {
        return Err(Error::DivergentMoment { mu, bound: a });
    }
    Ok(gamma_real(1.0 - mu / a)? / gamma_real(1.0 - mu)?)
}

/// Small-argument asymptotic form of the one-sided Lévy density,
///
/// `g^a_α(t) = [2π(1-α)]^{-1/2} α^{1/(2-2α)} t^{-(2-α)/(2-2α)} exp[-(1-α) α^{α/(1-α)} t^{-α/(1-α)}]`.
///
/// At `α = 1/2` this coincides with [`levy_pdf_half`].
pub fn levy_asymptotic(idx: LevyIndex, t: f64) -> Result<f64> {
    check_positive(t, "levy_asymptotic argument")?;
    let a = idx.alpha();
    let ratio = a / (1.0 - a);
    let ln_t = t.ln();
    let log_prefactor = -0.5 * (2.0 * PI * (1.0 - a)).ln() + a.ln() / (2.0 - 2.0 * a);
    let log_power = -(2.0 - a) / (2.0 - 2.0 * a) * ln_t;
    let decay = (1.0 - a) * (ratio * a.ln() - ratio * ln_t).exp();
    Ok((log_prefactor + log_power - decay).exp())
}

/// `g^a_α(t)` at `α = γ/(1+γ)`, `t = γx/(1+γ)^{1+1/γ}`.
pub fn levy_asymptotic_rescaled(shape: Shape, x: f64) -> Result<f64> {
    check_positive(x, "levy_asymptotic_rescaled argument")?;
    let g = shape.gamma();
    let idx = LevyIndex::new(g / (1.0 + g))?;
    let t = g * x / (1.0 + g).powf(1.0 + 1.0 / g);
    if t == 0.0 {
        return Ok(0.0);
    }
    levy_asymptotic(idx, t)
}

/// Right-hand side of the rescaling identity,
/// `(1+γ)^{1/γ} / √(2π) · ((1+γ)/γ)^{3/2} · x^{γ/2} · Fr(γ, x)`.
/// Must equal [`levy_asymptotic_rescaled`].
pub fn levy_asymptotic_rescaled_closed(shape: Shape, x: f64) -> Result<f64> {
    check_positive(x, "levy_asymptotic_rescaled_closed argument")?;
    let g = shape.gamma();
    let c = (1.0 + g).powf(1.0 / g) / (2.0 * PI).sqrt() * ((1.0 + g) / g).powf(1.5);
    Ok(c * x.powf(g / 2.0) * frechet_pdf(shape, x)?)
}
