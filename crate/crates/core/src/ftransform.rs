//! Fréchet integral transform
//!
//! `f̄(γ, x) = ∫_0^∞ σ_γ(x, t) f(t) dt`, `σ_γ(x, t) = γ t x^{-(1+γ)} exp(-t x^{-γ})`,
//!
//! and its link to the Laplace transform,
//! `f̄(γ, x) = -γ x^{-(1+γ)} [d/du L[f](u)]_{u = x^{-γ}}`.

use std::f64::consts::PI;
use std::fmt;

use crate::distributions::{frechet_pdf, levy_pdf_half, LevyIndex, Shape};
use crate::error::{Error, Result};
use crate::meijer::{meijer_g_m0, MeijerSpec};
use crate::mellin::ContourConfig;
use crate::numerics::{
    integrate_semi_infinite, integrate_semi_infinite_with_breaks, EvalResult, QuadratureConfig,
};

/// Contour abscissa used for the `β = 1/2` closed form; the parameter list
/// `(-1/2, 0, 0)` puts a pole at `s = 1/2`, so the line must sit right of it.
pub const FRECHET_HALF_ABSCISSA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrechetKernelParams {
    pub gamma: Shape,
    pub x: f64,
    pub t: f64,
}

impl FrechetKernelParams {
    pub fn new(gamma: Shape, x: f64, t: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite() && t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "kernel needs x, t > 0, got x = {x}, t = {t}"
            )));
        }
        Ok(Self { gamma, x, t })
    }
}

/// `σ_γ(x, t) = γ t x^{-(1+γ)} exp(-t x^{-γ})`, which as a function of `x`
/// is the Fréchet density rescaled by `t^{1/γ}`.
pub fn frechet_kernel(params: FrechetKernelParams) -> Result<f64> {
    let FrechetKernelParams { gamma, x, t } = FrechetKernelParams::new(params.gamma, params.x, params.t)?;
    Ok(kernel(gamma.gamma(), x, t))
}

fn kernel(g: f64, x: f64, t: f64) -> f64 {
    let ln_x = x.ln();
    (g.ln() + t.ln() - (1.0 + g) * ln_x - t * (-g * ln_x).exp()).exp()
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function to transform, optionally paired with its Laplace transform.
/// Both callables must be free of side effects.
#[derive(Default)]
pub struct TransformTarget {
    f: Option<RealFn>,
    laplace_of_f: Option<RealFn>,
}

impl fmt::Debug for TransformTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformTarget")
            .field("f", &self.f.is_some())
            .field("laplace_of_f", &self.laplace_of_f.is_some())
            .finish()
    }
}

impl TransformTarget {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Some(Box::new(f)),
            laplace_of_f: None,
        }
    }

    /// Target known only through its Laplace transform.
    pub fn from_laplace(laplace: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: None,
            laplace_of_f: Some(Box::new(laplace)),
        }
    }

    pub fn with_laplace(mut self, laplace: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.laplace_of_f = Some(Box::new(laplace));
        self
    }

    /// `g_{1/2}` together with `L[g_{1/2}](u) = exp(-√u)`.
    pub fn levy_half() -> Self {
        Self::new(|t| levy_pdf_half(t).unwrap_or(0.0)).with_laplace(|u| (-u.sqrt()).exp())
    }

    /// `Fr(β, ·)` without a Laplace transform attached.
    pub fn frechet(beta: Shape) -> Self {
        Self::new(move |t| frechet_pdf(beta, t).unwrap_or(0.0))
    }

    pub fn has_function(&self) -> bool {
        self.f.is_some()
    }

    pub fn has_laplace(&self) -> bool {
        self.laplace_of_f.is_some()
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "transform variable must be positive, got {x}"
        )))
    }
}

/// Direct quadrature of the defining integral over `t`, split at the
/// kernel scale `t = x^γ`.
pub fn frechet_transform_quadrature(
    target: &TransformTarget,
    gamma: Shape,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_x(x)?;
    let f = target.f.as_ref().ok_or(Error::MissingFunction)?;
    let g = gamma.gamma();
    let scale = x.powf(g);
    integrate_semi_infinite_with_breaks(|t| kernel(g, x, t) * f(t), 0.0, &[scale, 1.0], cfg)
}

/// `-γ x^{-(1+γ)} dL/du` at `u = x^{-γ}` with a central difference of step
/// `max(1e-6, 1e-6 u)`. Uses the attached Laplace transform, or builds one
/// by quadrature of `f`.
pub fn frechet_transform_via_laplace(
    target: &TransformTarget,
    gamma: Shape,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_x(x)?;
    let g = gamma.gamma();
    let u = x.powf(-g);
    let h = (1e-6f64).max(1e-6 * u).min(0.5 * u);
    let factor = -g * x.powf(-(1.0 + g)) / (2.0 * h);

    let (hi, lo) = match (&target.laplace_of_f, &target.f) {
        (Some(lap), _) => {
            let exact = |v: f64| EvalResult {
                value: lap(v),
                err_estimate: f64::EPSILON * lap(v).abs(),
                evaluations: 1,
                converged: true,
            };
            (exact(u + h), exact(u - h))
        }
        (None, Some(f)) => {
            let lap = |v: f64| integrate_semi_infinite(|t| (-v * t).exp() * f(t), 0.0, cfg);
            (lap(u + h)?, lap(u - h)?)
        }
        (None, None) => return Err(Error::MissingLaplace),
    };
    Ok(EvalResult {
        value: factor * (hi.value - lo.value),
        err_estimate: factor.abs() * (hi.err_estimate + lo.err_estimate),
        evaluations: hi.evaluations + lo.evaluations,
        converged: hi.converged && lo.converged,
    })
}

/// Transform of the one-sided Lévy law `g_α`: the Fréchet density `Fr(γα, x)`.
pub fn frechet_transform_levy(alpha: LevyIndex, gamma: Shape, x: f64) -> Result<f64> {
    check_x(x)?;
    frechet_pdf(Shape::new(gamma.gamma() * alpha.alpha())?, x)
}

/// Transform of `Fr(1/2, ·)` in closed form,
/// `γ/(4√π) x^{-(1+γ)} G^{3,0}_{0,3}(x^{-γ}/4 | -1/2, 0, 0)`.
///
/// The contour must satisfy `cfg.abscissa > 1/2`; see [`FRECHET_HALF_ABSCISSA`].
pub fn frechet_transform_frechet_half(gamma: Shape, x: f64, cfg: &ContourConfig) -> Result<EvalResult> {
    check_x(x)?;
    let g = gamma.gamma();
    let spec = MeijerSpec::new(vec![-0.5, 0.0, 0.0])?;
    let z = (-g * x.ln()).exp() / 4.0;
    let front = g / (4.0 * PI.sqrt()) * (-(1.0 + g) * x.ln()).exp();
    let r = meijer_g_m0(&spec, z, cfg)?;
    if r.value == 0.0 {
        return Ok(r);
    }
    Ok(r.scaled(front))
}
