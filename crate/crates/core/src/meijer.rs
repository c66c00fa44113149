//! Meijer G functions of signature `G^{m,0}_{0,m}(z | b_1 … b_m)`, evaluated
//! from their Mellin–Barnes definition
//!
//! `G(z) = (1/2πi) ∫ Π_j Γ(b_j + s) z^{-s} ds`
//!
//! along a vertical line to the right of every pole.

use std::f64::consts::PI;

use crate::distributions::RationalShape;
use crate::error::{Error, Result};
use crate::mellin::{delta_list, line_integral, ContourConfig};
use crate::numerics::{log_gamma, log_gamma_real, ComplexValue, EvalResult};

/// Lower parameter list `b_1 … b_m` of `G^{m,0}_{0,m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerSpec {
    b: Vec<f64>,
}

impl MeijerSpec {
    pub fn new(b: Vec<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Domain("Meijer G needs at least one parameter".into()));
        }
        if let Some(bad) = b.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "Meijer G parameter must be finite, got {bad}"
            )));
        }
        Ok(Self { b })
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    fn min_b(&self) -> f64 {
        self.b.iter().copied().fold(f64::INFINITY, f64::min)
    }

    // log |Π Γ(b_j + σ) z^{-σ}| on the real axis
    fn log_magnitude(&self, sigma: f64, ln_z: f64) -> f64 {
        self.b
            .iter()
            .map(|b| log_gamma_real(b + sigma).unwrap_or(f64::INFINITY))
            .sum::<f64>()
            - sigma * ln_z
    }

    /// Real saddle point of the integrand, searched on `[from, ∞)`.
    /// The log-magnitude is convex there, so a doubling bracket followed by
    /// golden-section refinement suffices.
    fn saddle(&self, ln_z: f64, from: f64) -> f64 {
        let phi = |s: f64| self.log_magnitude(s, ln_z);
        let mut lo = from;
        let mut step = 1.0;
        let mut best = phi(lo);
        loop {
            let next = phi(lo + step);
            if next >= best || step > 1e6 {
                break;
            }
            best = next;
            lo += step;
            step *= 2.0;
        }
        let (mut a, mut b) = ((lo - step / 2.0).max(from), lo + step);
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        while b - a > 1e-3 * (1.0 + a.abs()) {
            let x1 = b - ratio * (b - a);
            let x2 = a + ratio * (b - a);
            if phi(x1) < phi(x2) {
                b = x2;
            } else {
                a = x1;
            }
        }
        0.5 * (a + b)
    }
}

/// Closed form of `L[Fr(l/k, x); p]`:
/// `prefactor · G^{k+l,0}_{0,k+l}(p^l / (k^k l^l) | Δ(k,1), Δ(l,0))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceClosedForm {
    pub shape: RationalShape,
    /// `√(kl) / (2π)^{(k+l)/2 - 1}`
    pub prefactor: f64,
    pub spec: MeijerSpec,
}

impl LaplaceClosedForm {
    /// Meijer argument `p^l / (k^k l^l)`.
    pub fn arg(&self, p: f64) -> f64 {
        let (l, k) = (self.shape.l() as f64, self.shape.k() as f64);
        (l * p.ln() - k * k.ln() - l * l.ln()).exp()
    }

    pub fn evaluate(&self, p: f64, cfg: &ContourConfig) -> Result<EvalResult> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!(
                "Laplace variable must be positive, got {p}"
            )));
        }
        Ok(meijer_g_m0(&self.spec, self.arg(p), cfg)?.scaled(self.prefactor))
    }
}

pub fn build_laplace_closed_form(shape: RationalShape) -> LaplaceClosedForm {
    let (l, k) = (shape.l(), shape.k());
    let prefactor = ((k * l) as f64).sqrt() / (2.0 * PI).powf((k + l) as f64 / 2.0 - 1.0);
    let b = [delta_list(k, 1.0), delta_list(l, 0.0)].concat();
    LaplaceClosedForm {
        shape,
        prefactor,
        spec: MeijerSpec::new(b).expect("delta lists are finite and non-empty"),
    }
}

fn contour_for(spec: &MeijerSpec, z: f64, cfg: &ContourConfig) -> Result<(ContourConfig, f64)> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!(
            "Meijer G argument must be positive, got {z}"
        )));
    }
    cfg.validate()?;
    let min_b = spec.min_b();
    if cfg.abscissa <= -min_b {
        return Err(Error::Contour(format!(
            "abscissa {} must exceed -min(b) = {}",
            cfg.abscissa, -min_b
        )));
    }
    let ln_z = z.ln();
    let mut line = *cfg;
    if cfg.saddle_shift {
        let s = spec.saddle(ln_z, cfg.abscissa);
        if s > cfg.abscissa + 0.25 {
            line.abscissa = s;
        }
    }
    Ok((line, ln_z))
}

fn evaluate_line(spec: &MeijerSpec, z: f64, cfg: &ContourConfig, derivative: bool) -> Result<EvalResult> {
    let (line, ln_z) = contour_for(spec, z, cfg)?;
    let c = line.abscissa;
    let integrand = |tau: f64| {
        let s = ComplexValue::new(c, tau);
        let mut acc = -s * ln_z;
        for b in &spec.b {
            match log_gamma(s + b) {
                Ok(v) => acc += v,
                Err(_) => return ComplexValue::new(f64::NAN, f64::NAN),
            }
        }
        let g = acc.exp();
        if derivative {
            -g * s / z
        } else {
            g
        }
    };
    Ok(line_integral(integrand, &line)?.map(|v| v.re))
}

/// `G^{m,0}_{0,m}(z | b)` for real `z > 0`. Requires `abscissa > -min(b)`.
pub fn meijer_g_m0(spec: &MeijerSpec, z: f64, cfg: &ContourConfig) -> Result<EvalResult> {
    evaluate_line(spec, z, cfg, false)
}

/// `d/dz G^{m,0}_{0,m}(z | b)`, from the same contour with the integrand
/// multiplied by `-s/z`.
pub fn meijer_g_m0_derivative(spec: &MeijerSpec, z: f64, cfg: &ContourConfig) -> Result<EvalResult> {
    evaluate_line(spec, z, cfg, true)
}
