//! Built-in invariant suite, one line per check.

use std::f64::consts::PI;
use std::time::Instant;

use clap::ValueEnum;
use frechet_core::distributions::levy_asymptotic_rescaled_closed;
use frechet_core::figures::{fig4_sup_distances, figure_data, logspace};
use frechet_core::numerics::{integrate, integrate_semi_infinite};
use frechet_core::{
    bessel_k1, build_laplace_closed_form, frechet_moment, frechet_pdf, frechet_transform_frechet_half,
    frechet_transform_levy, frechet_transform_quadrature, frechet_transform_via_laplace, laplace_frechet,
    laplace_frechet_oracle, laplace_symmetry_check, laplace_via_mellin, levy_asymptotic_rescaled,
    levy_moment, levy_pdf_half, log_gamma, meijer_g_m0, ComplexValue, ContourConfig, FigureId, LaplaceConfig,
    LaplaceQuery, LevyIndex, MeijerSpec, MellinFunction, Method, QuadratureConfig, RationalShape, Shape,
    TransformTarget, FRECHET_HALF_ABSCISSA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Default,
    Strict,
}

impl Profile {
    /// Tolerance for agreement between independent evaluation routes.
    fn cross_path(self) -> f64 {
        match self {
            Profile::Default => 1e-8,
            Profile::Strict => 1e-9,
        }
    }
}

type Check = fn(Profile) -> Result<String, String>;

const CHECKS: &[(&str, Check)] = &[
    ("gamma.multiplication", gamma_multiplication),
    ("gamma.recurrence", gamma_recurrence),
    ("quadrature.reference", quadrature_reference),
    ("bessel.k1", bessel_reference),
    ("distributions.normalization", frechet_normalization),
    ("distributions.moments", moments),
    ("distributions.levy-laplace", levy_laplace),
    ("distributions.rescaled-identity", rescaled_identity),
    ("mellin.exponential", mellin_exponential),
    ("meijer.exponential", meijer_exponential),
    ("meijer.contour-shift", contour_shift),
    ("laplace.cross-path", laplace_cross_path),
    ("laplace.bessel", laplace_bessel),
    ("laplace.symmetry", laplace_symmetry),
    ("laplace.decreasing-convex", laplace_shape),
    ("ftransform.levy", transform_levy),
    ("ftransform.frechet-half", transform_frechet_half),
    ("ftransform.dual-path", transform_dual_path),
    ("figures.fig4-ordering", fig4_ordering),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

pub fn run(profile: Profile) -> bool {
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in CHECKS {
        match check(profile) {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} checks passed in {:.1} s (profile {profile:?})",
        CHECKS.len() - failed,
        CHECKS.len(),
        start.elapsed().as_secs_f64()
    );
    failed == 0
}

fn verdict(worst: f64, tol: f64) -> Result<String, String> {
    let msg = format!("max deviation {worst:.2e} (tol {tol:.0e})");
    if worst <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn err(e: frechet_core::Error) -> String {
    e.to_string()
}

fn shapes() -> impl Iterator<Item = RationalShape> {
    (1..=4).flat_map(|l| (1..=4).map(move |k| RationalShape::new(l, k).unwrap()))
}

fn tight() -> QuadratureConfig {
    QuadratureConfig::with_tolerances(1e-14, 1e-12).with_max_subdivisions(1000)
}

fn meijer(s: RationalShape, p: f64) -> Result<f64, String> {
    let q = LaplaceQuery::new(s, p, Method::MeijerG).map_err(err)?;
    Ok(laplace_frechet(&q, &LaplaceConfig::default()).map_err(err)?.value)
}

fn complex_grid() -> impl Iterator<Item = ComplexValue> {
    (0..10)
        .flat_map(|i| (0..10).map(move |j| ComplexValue::new(0.15 + 0.8 * i as f64, -7.0 + 1.5 * j as f64)))
}

fn gamma_multiplication(_: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for z in complex_grid() {
        for n in 2..=4u32 {
            let nf = n as f64;
            let lhs = log_gamma(z * nf).map_err(err)?;
            let mut rhs = (z * nf - 0.5) * nf.ln() - (nf - 1.0) / 2.0 * (2.0 * PI).ln();
            for j in 0..n {
                rhs += log_gamma(z + j as f64 / nf).map_err(err)?;
            }
            worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        }
    }
    verdict(worst, 1e-12)
}

fn gamma_recurrence(_: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for z in complex_grid().chain(complex_grid().map(|z| ComplexValue::new(-z.re * 3.0, z.im + 0.05))) {
        let d = log_gamma(z + 1.0).map_err(err)? - log_gamma(z).map_err(err)? - z.ln();
        worst = worst.max(d.norm() / (1.0 + z.norm()));
    }
    verdict(worst, 1e-12)
}

fn quadrature_reference(_: Profile) -> Result<String, String> {
    let cfg = tight();
    let a = integrate(|x| x.sin(), 0.0, PI, &cfg).map_err(err)?.value - 2.0;
    let b = integrate_semi_infinite(|x| (-x * x).exp(), 0.0, &cfg)
        .map_err(err)?
        .value
        - PI.sqrt() / 2.0;
    let c = integrate_semi_infinite(|x| 1.0 / (1.0 + x * x), 0.0, &cfg)
        .map_err(err)?
        .value
        - PI / 2.0;
    verdict(a.abs().max(b.abs()).max(c.abs()), 1e-10)
}

fn bessel_reference(_: Profile) -> Result<String, String> {
    let table = [
        (0.1, 9.853_844_780_870_606_1),
        (2.0, 0.139_865_881_816_522_43),
        (10.0, 1.864_877_345_382_558_5e-5),
    ];
    let mut worst = 0.0f64;
    for (z, want) in table {
        worst = worst.max((bessel_k1(z).map_err(err)? - want).abs() / want);
    }
    let grid = logspace(0.05, 50.0, 500);
    let vals: Vec<f64> = grid.iter().map(|&z| bessel_k1(z).unwrap_or(f64::NAN)).collect();
    if !vals.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err("K1 not positive and decreasing on [0.05, 50]".into());
    }
    verdict(worst, 1e-12)
}

fn frechet_normalization(_: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for g in [1.0 / 3.0, 0.5, 1.0, 2.0, 4.0] {
        let s = Shape::new(g).map_err(err)?;
        let r = integrate_semi_infinite(|x| frechet_pdf(s, x).unwrap_or(0.0), 0.0, &tight()).map_err(err)?;
        worst = worst.max((r.value - 1.0).abs());
    }
    verdict(worst, 1e-10)
}

fn moments(p: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for (g, mu) in [(0.5, -1.0), (1.0, 0.3), (2.0, 1.0), (3.0, -2.0), (3.5, 2.5)] {
        let s = Shape::new(g).map_err(err)?;
        let q = integrate_semi_infinite(|x| x.powf(mu) * frechet_pdf(s, x).unwrap_or(0.0), 0.0, &tight())
            .map_err(err)?;
        let exact = frechet_moment(s, mu).map_err(err)?;
        worst = worst.max((q.value - exact).abs() / exact);
    }
    let half = LevyIndex::new(0.5).map_err(err)?;
    for mu in [-1.0, 0.25] {
        let q = integrate_semi_infinite(|x| x.powf(mu) * levy_pdf_half(x).unwrap_or(0.0), 0.0, &tight())
            .map_err(err)?;
        worst = worst.max((q.value - levy_moment(half, mu).map_err(err)?).abs());
    }
    if frechet_moment(Shape::new(1.0).unwrap(), 1.0).is_ok() || levy_moment(half, 0.5).is_ok() {
        return Err("divergent moment not rejected".into());
    }
    verdict(worst, p.cross_path())
}

fn levy_laplace(_: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for p in [0.5, 1.0, 4.0] {
        let r = integrate_semi_infinite(
            |x| (-p * x).exp() * levy_pdf_half(x).unwrap_or(0.0),
            0.0,
            &tight(),
        )
        .map_err(err)?;
        worst = worst.max((r.value - (-p.sqrt()).exp()).abs());
    }
    verdict(worst, 1e-9)
}

fn rescaled_identity(_: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for (g, x) in [(1.0, 0.5), (1.0 / 3.0, 1.0), (2.0, 0.7)] {
        let s = Shape::new(g).map_err(err)?;
        let a = levy_asymptotic_rescaled(s, x).map_err(err)?;
        let b = levy_asymptotic_rescaled_closed(s, x).map_err(err)?;
        worst = worst.max((a - b).abs() / b);
    }
    verdict(worst, 1e-12)
}

fn mellin_exponential(p: Profile) -> Result<String, String> {
    let mf = MellinFunction::exponential();
    let mut worst = 0.0f64;
    for x in [0.1, 1.0, 5.0] {
        let v = laplace_via_mellin(&mf, x, &ContourConfig::default())
            .map_err(err)?
            .value;
        worst = worst.max((v - 1.0 / (1.0 + x)).abs());
    }
    verdict(worst, p.cross_path())
}

fn meijer_exponential(_: Profile) -> Result<String, String> {
    let spec = MeijerSpec::new(vec![0.0]).map_err(err)?;
    let mut worst = 0.0f64;
    for z in logspace(1e-2, 20.0, 50) {
        let v = meijer_g_m0(&spec, z, &ContourConfig::default())
            .map_err(err)?
            .value;
        worst = worst.max((v - (-z).exp()).abs());
    }
    verdict(worst, 1e-10)
}

fn contour_shift(p: Profile) -> Result<String, String> {
    let form = build_laplace_closed_form(RationalShape::new(2, 3).map_err(err)?);
    let vals = [0.3, 0.5, 1.0, 1.5]
        .into_iter()
        .map(|c| {
            Ok(form
                .evaluate(1.0, &ContourConfig::default().with_abscissa(c).fixed())
                .map_err(err)?
                .value)
        })
        .collect::<Result<Vec<f64>, String>>()?;
    let (lo, hi) = vals
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    verdict((hi - lo) / hi, p.cross_path())
}

fn laplace_cross_path(p: Profile) -> Result<String, String> {
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for s in shapes() {
        for x in logspace(0.01, 20.0, 12) {
            let o = laplace_frechet_oracle(s.into(), x, &cfg).map_err(err)?.value;
            worst = worst.max((meijer(s, x)? - o).abs() / o.max(1.0));
        }
    }
    verdict(worst, p.cross_path())
}

fn laplace_bessel(p: Profile) -> Result<String, String> {
    let s = RationalShape::new(1, 1).map_err(err)?;
    let mut worst = 0.0f64;
    for x in logspace(0.01, 20.0, 25) {
        let z = 2.0 * x.sqrt();
        let want = z * bessel_k1(z).map_err(err)?;
        worst = worst.max((meijer(s, x)? - want).abs() / want);
    }
    verdict(worst, p.cross_path())
}

fn laplace_symmetry(p: Profile) -> Result<String, String> {
    let mut worst = 0.0f64;
    for s in shapes() {
        for x in [0.5, 1.0, 2.0, 5.0] {
            let (a, b) = laplace_symmetry_check(s, x, &ContourConfig::default()).map_err(err)?;
            worst = worst.max((a - b).abs());
        }
    }
    verdict(worst, p.cross_path())
}

fn laplace_shape(_: Profile) -> Result<String, String> {
    let grid = logspace(0.01, 20.0, 40);
    for s in shapes() {
        let v = grid
            .iter()
            .map(|&x| meijer(s, x))
            .collect::<Result<Vec<_>, _>>()?;
        let slopes: Vec<f64> = grid
            .windows(2)
            .zip(v.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect();
        if !(slopes.iter().all(|&d| d < 0.0) && slopes.windows(2).all(|w| w[1] > w[0])) {
            return Err(format!("L for shape {s} not strictly decreasing and convex"));
        }
        if v.iter().any(|&y| !(y > 0.0 && y <= 1.0)) {
            return Err(format!("L for shape {s} leaves (0, 1]"));
        }
    }
    Ok("16 shapes on 40 points".into())
}

fn transform_levy(_: Profile) -> Result<String, String> {
    let target = TransformTarget::levy_half();
    let half = LevyIndex::new(0.5).map_err(err)?;
    let mut worst = 0.0f64;
    for g in [0.5, 1.0, 2.0] {
        let s = Shape::new(g).map_err(err)?;
        for x in [0.5, 1.0, 2.0] {
            let q = frechet_transform_quadrature(&target, s, x, &tight())
                .map_err(err)?
                .value;
            worst = worst.max((q - frechet_transform_levy(half, s, x).map_err(err)?).abs());
        }
    }
    verdict(worst, 1e-8)
}

fn transform_frechet_half(_: Profile) -> Result<String, String> {
    let target = TransformTarget::frechet(Shape::new(0.5).map_err(err)?);
    let cfg = ContourConfig::default().with_abscissa(FRECHET_HALF_ABSCISSA);
    let mut worst = 0.0f64;
    for g in [1.0 / 3.0, 1.0] {
        let s = Shape::new(g).map_err(err)?;
        for x in [0.5, 1.0, 2.0] {
            let closed = frechet_transform_frechet_half(s, x, &cfg).map_err(err)?.value;
            let quad = frechet_transform_quadrature(&target, s, x, &tight())
                .map_err(err)?
                .value;
            worst = worst.max((closed - quad).abs());
        }
    }
    verdict(worst, 1e-6)
}

fn transform_dual_path(_: Profile) -> Result<String, String> {
    let target = TransformTarget::new(|t| (-t).exp()).with_laplace(|u| 1.0 / (1.0 + u));
    let mut worst = 0.0f64;
    for g in [0.5, 1.0, 2.0] {
        let s = Shape::new(g).map_err(err)?;
        for x in [0.5, 1.0, 2.0] {
            let a = frechet_transform_quadrature(&target, s, x, &tight())
                .map_err(err)?
                .value;
            let b = frechet_transform_via_laplace(&target, s, x, &tight())
                .map_err(err)?
                .value;
            worst = worst.max((a - b).abs() / a);
        }
    }
    verdict(worst, 1e-6)
}

fn fig4_ordering(_: Profile) -> Result<String, String> {
    let d = figure_data(FigureId::Fig4, 400).map_err(err)?;
    let (d1, d3) = fig4_sup_distances(&d).ok_or("fig4 columns missing")?;
    let msg = format!("sup-norm gamma=1/3 {d3:.4}, gamma=1 {d1:.4}");
    if d3 < d1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique() {
        let mut n: Vec<_> = names().collect();
        n.sort();
        n.dedup();
        assert_eq!(n.len(), CHECKS.len());
    }

    #[test]
    fn strict_is_tighter() {
        assert!(Profile::Strict.cross_path() < Profile::Default.cross_path());
        assert_eq!(Profile::Strict.cross_path(), 1e-9);
    }
}
