//! Laplace transform of the Fréchet distribution for rational shape
//! parameters, evaluated through Meijer G functions of type
//! `G^{m,0}_{0,m}` on a vertical Mellin–Barnes contour.
//!
//! The crate also provides the Fréchet integral transform, the one-sided
//! Lévy law at `alpha = 1/2` together with its small-argument asymptotic
//! form, and quadrature oracles that cross-check every closed form.
//!
//! ```
//! use frechet_core::{laplace_frechet, LaplaceQuery, Method, RationalShape};
//!
//! let shape = RationalShape::new(1, 2).unwrap();
//! let res = laplace_frechet(&LaplaceQuery::new(shape, 1.0, Method::MeijerG).unwrap(), &Default::default()).unwrap();
//! assert!((res.value - 0.293_126_762_771_955_5).abs() < 1e-10);
//! ```

// reference values and coefficients are kept at the digits they were published with
#![allow(clippy::excessive_precision)]

pub mod distributions;
pub mod error;
pub mod figures;
pub mod ftransform;
pub mod laplace;
pub mod meijer;
pub mod mellin;
pub mod numerics;

pub use distributions::{
    frechet_cdf, frechet_moment, frechet_pdf, frechet_quantile, levy_asymptotic, levy_asymptotic_rescaled,
    levy_moment, levy_pdf_half, LevyIndex, RationalShape, Shape,
};
pub use error::{Error, Result};
pub use figures::{figure_data, write_figure, FigureData, FigureId, FigureRequest};
pub use ftransform::{
    frechet_kernel, frechet_transform_frechet_half, frechet_transform_levy, frechet_transform_quadrature,
    frechet_transform_via_laplace, FrechetKernelParams, TransformTarget, FRECHET_HALF_ABSCISSA,
};
pub use laplace::{
    laplace_frechet, laplace_frechet_bessel, laplace_frechet_oracle, laplace_symmetry_check, LaplaceConfig,
    LaplaceQuery, Method,
};
pub use meijer::{
    build_laplace_closed_form, meijer_g_m0, meijer_g_m0_derivative, LaplaceClosedForm, MeijerSpec,
};
pub use mellin::{delta_list, laplace_via_mellin, mellin_frechet, ContourConfig, MellinFunction};
pub use numerics::{
    bessel_k1, integrate_semi_infinite, log_gamma, ComplexValue, EvalResult, QuadratureConfig,
};
