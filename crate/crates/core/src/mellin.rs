//! Mellin-transform layer: the Mellin image of the Fréchet law, the
//! `Δ(k, a)` parameter lists, and Laplace transforms recovered from a Mellin
//! image by numerical integration along a vertical contour,
//!
//! `L[f](p) = (1/2πi) ∫_{c-i∞}^{c+i∞} f*(1-s) Γ(s) p^{-s} ds`.

use std::f64::consts::PI;
use std::fmt;

use crate::distributions::RationalShape;
use crate::error::{Error, Result};
use crate::numerics::{log_gamma, ComplexValue, EvalResult};

/// Below this `p` the Laplace transform of a normalised density is
/// reported as its `p -> 0` limit instead of being integrated.
pub const SMALL_P_GUARD: f64 = 1e-6;

/// Discretisation policy for integrals along `Re(s) = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    /// Real part `c` of the integration line.
    pub abscissa: f64,
    /// Step of the first trapezoidal pass; also the truncation scan step.
    pub initial_step: f64,
    pub max_halvings: u32,
    /// The line is cut where the integrand falls below this fraction of its peak.
    pub truncation_tol: f64,
    pub target_rel_tol: f64,
    /// Allow Meijer G evaluations to move the line right, to the real
    /// saddle point of the integrand, when that lies beyond `abscissa`.
    pub saddle_shift: bool,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            abscissa: 0.5,
            initial_step: 0.05,
            max_halvings: 8,
            truncation_tol: 1e-16,
            target_rel_tol: 1e-10,
            saddle_shift: true,
        }
    }
}

impl ContourConfig {
    pub fn with_abscissa(mut self, c: f64) -> Self {
        self.abscissa = c;
        self
    }

    /// Pins the line at `abscissa`; no saddle shift.
    pub fn fixed(mut self) -> Self {
        self.saddle_shift = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.abscissa.is_finite() {
            return Err(Error::Config(format!(
                "abscissa must be finite, got {}",
                self.abscissa
            )));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return Err(Error::Config(format!(
                "initial_step must be positive, got {}",
                self.initial_step
            )));
        }
        if !(self.truncation_tol > 0.0 && self.target_rel_tol > 0.0) {
            return Err(Error::Config("contour tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Mellin image `s ↦ f*(s)` with its strip of validity `(σ_min, σ_max)`.
///
/// The callable must be free of side effects; it may be invoked from
/// several threads.
pub struct MellinFunction {
    f_star: Box<dyn Fn(ComplexValue) -> ComplexValue + Send + Sync>,
    strip: (f64, f64),
}

impl fmt::Debug for MellinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MellinFunction")
            .field("strip", &self.strip)
            .finish_non_exhaustive()
    }
}

impl MellinFunction {
    pub fn new<F>(f_star: F, strip: (f64, f64)) -> Result<Self>
    where
        F: Fn(ComplexValue) -> ComplexValue + Send + Sync + 'static,
    {
        if strip.0.is_nan() || strip.1.is_nan() || strip.0 >= strip.1 {
            return Err(Error::Domain(format!("empty strip ({}, {})", strip.0, strip.1)));
        }
        Ok(Self {
            f_star: Box::new(f_star),
            strip,
        })
    }

    /// Image of `e^{-t}`: `Γ(s)` on `Re(s) > 0`.
    pub fn exponential() -> Self {
        Self::new(
            |s| {
                log_gamma(s)
                    .map(|v| v.exp())
                    .unwrap_or(ComplexValue::new(f64::NAN, f64::NAN))
            },
            (0.0, f64::INFINITY),
        )
        .expect("valid strip")
    }

    /// Image of `Fr(l/k, x)`, valid on `Re(s) < 1 + l/k`.
    pub fn frechet(shape: RationalShape) -> Self {
        let f = move |s| mellin_frechet(shape, s).unwrap_or(ComplexValue::new(f64::NAN, f64::NAN));
        Self::new(f, (f64::NEG_INFINITY, 1.0 + shape.gamma())).expect("valid strip")
    }

    pub fn eval(&self, s: ComplexValue) -> ComplexValue {
        (self.f_star)(s)
    }

    pub fn strip(&self) -> (f64, f64) {
        self.strip
    }

    fn contains(&self, sigma: f64) -> bool {
        self.strip.0 < sigma && sigma < self.strip.1
    }
}

/// `M[Fr(l/k, x); s] = Γ(k(1-s)/l + 1)`.
pub fn mellin_frechet(shape: RationalShape, s: ComplexValue) -> Result<ComplexValue> {
    let arg = (1.0 - s) * (shape.k() as f64 / shape.l() as f64) + 1.0;
    Ok(log_gamma(arg)?.exp())
}

/// `Δ(k, a) = [a/k, (a+1)/k, …, (a+k-1)/k]`.
pub fn delta_list(k: u32, a: f64) -> Vec<f64> {
    let kf = k as f64;
    (0..k).map(|j| (a + j as f64) / kf).collect()
}

/// Trapezoidal value of `(1/2π) ∫ g(τ) dτ` over the real line, where
/// `g(τ)` is the integrand at `s = c + iτ`. The line is truncated where
/// `|g|` drops below `truncation_tol` times its peak and the step is halved
/// until successive sums agree.
pub(crate) fn line_integral<G>(g: G, cfg: &ContourConfig) -> Result<EvalResult<ComplexValue>>
where
    G: Fn(f64) -> ComplexValue,
{
    cfg.validate()?;
    const MAX_SCAN: usize = 1_000_000;
    const QUIET_RUN: usize = 3;

    let mut evaluations = 0usize;
    let mut eval = |tau: f64| -> Result<ComplexValue> {
        evaluations += 1;
        let v = g(tau);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Contour(format!("integrand not finite at tau = {tau}")))
        }
    };

    let h0 = cfg.initial_step;
    let centre = eval(0.0)?;
    let mut sum = centre;
    let mut abs_sum = centre.norm();
    let mut peak = centre.norm();
    let mut quiet = 0;
    let mut extent = 0usize;
    while quiet < QUIET_RUN {
        extent += 1;
        if extent > MAX_SCAN {
            return Err(Error::Contour(
                "integrand does not decay along the contour".into(),
            ));
        }
        let tau = extent as f64 * h0;
        let up = eval(tau)?;
        let down = eval(-tau)?;
        sum += up + down;
        abs_sum += up.norm() + down.norm();
        peak = peak.max(up.norm()).max(down.norm());
        if up.norm().max(down.norm()) <= cfg.truncation_tol * peak {
            quiet += 1;
        } else {
            quiet = 0;
        }
    }

    if peak < 1e-300 {
        // super-algebraic decay has underflowed; the exact value is below range
        return Ok(EvalResult {
            value: ComplexValue::new(0.0, 0.0),
            err_estimate: peak,
            evaluations,
            converged: true,
        });
    }

    let mut h = h0;
    let mut estimate = sum * h;
    let mut abs_estimate = abs_sum * h;
    let mut diff = f64::INFINITY;
    let mut floor = 0.0;
    let mut converged = false;
    let mut nodes = extent; // samples on one side at the current step
    for _ in 0..cfg.max_halvings.max(1) {
        h *= 0.5;
        let mut fresh = ComplexValue::new(0.0, 0.0);
        let mut fresh_abs = 0.0;
        for j in 0..nodes {
            let tau = (2 * j + 1) as f64 * h;
            let up = eval(tau)?;
            let down = eval(-tau)?;
            fresh += up + down;
            fresh_abs += up.norm() + down.norm();
        }
        nodes *= 2;
        let refined = estimate * 0.5 + fresh * h;
        abs_estimate = abs_estimate * 0.5 + fresh_abs * h;
        diff = (refined - estimate).norm();
        estimate = refined;
        floor = 64.0 * f64::EPSILON * abs_estimate;
        if diff <= (cfg.target_rel_tol * estimate.norm()).max(floor) {
            converged = true;
            break;
        }
    }

    let scale = 1.0 / (2.0 * PI);
    Ok(EvalResult {
        value: estimate * scale,
        err_estimate: diff.max(floor) * scale,
        evaluations,
        converged,
    })
}

/// Laplace transform `L[f](p)` recovered from the Mellin image of `f` by
/// integrating `f*(1-s) Γ(s) p^{-s}` along `Re(s) = c`.
///
/// Requires `c > 0` and `1 - c` inside the strip of `mf`. For
/// `p < SMALL_P_GUARD` returns the limit `f*(1)`.
pub fn laplace_via_mellin(mf: &MellinFunction, p: f64, cfg: &ContourConfig) -> Result<EvalResult> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!(
            "Laplace variable must be positive, got {p}"
        )));
    }
    cfg.validate()?;
    let c = cfg.abscissa;
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Contour(format!(
            "abscissa {c} must be positive to clear the poles of Γ(s)"
        )));
    }
    if !mf.contains(1.0 - c) {
        let (lo, hi) = mf.strip();
        return Err(Error::Contour(format!(
            "1 - c = {} lies outside the strip ({lo}, {hi})",
            1.0 - c
        )));
    }
    if p < SMALL_P_GUARD && mf.contains(1.0) {
        let limit = mf.eval(ComplexValue::new(1.0, 0.0));
        return Ok(EvalResult {
            value: limit.re,
            err_estimate: 0.0,
            evaluations: 1,
            converged: true,
        });
    }

    let ln_p = p.ln();
    let integrand = |tau: f64| {
        let s = ComplexValue::new(c, tau);
        match log_gamma(s) {
            Ok(lg) => (lg - s * ln_p).exp() * mf.eval(1.0 - s),
            Err(_) => ComplexValue::new(f64::NAN, f64::NAN),
        }
    };
    let r = line_integral(integrand, cfg)?;
    // conjugate symmetry makes the exact result real
    let residue_ok = r.value.im.abs() <= (1e-10 * r.value.re.abs()).max(r.err_estimate);
    Ok(EvalResult {
        value: r.value.re,
        err_estimate: r.err_estimate,
        evaluations: r.evaluations,
        converged: r.converged && residue_ok,
    })
}
