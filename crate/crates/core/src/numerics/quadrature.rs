use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::EvalResult;
use crate::error::{Error, Result};

/// Controls for the adaptive Gauss–Kronrod integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the number of subintervals kept by the bisection.
    pub max_subdivisions: usize,
    /// Distance from the lower limit at which semi-infinite ranges are
    /// split into a finite piece and a mapped tail.
    pub split: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 200,
            split: 1.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Config(format!(
                "tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        if !(self.split > 0.0 && self.split.is_finite()) {
            return Err(Error::Config(format!(
                "split must be positive, got {}",
                self.split
            )));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_286_213,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * WGK[10];
    let mut res_abs = res_k.abs();
    let mut res_g = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    (res_k * half, err)
}

// Halves of [a, b]; each child's error is at least half the disagreement
// between the parent estimate and the sum of the children.
fn split<F: Fn(f64) -> f64>(f: &F, piece: usize, a: f64, b: f64, parent: f64) -> [Segment; 2] {
    let mid = 0.5 * (a + b);
    let (v1, e1) = kronrod21(f, a, mid);
    let (v2, e2) = kronrod21(f, mid, b);
    let gap = 0.5 * (parent - v1 - v2).abs();
    [
        Segment {
            piece,
            a,
            b: mid,
            value: v1,
            err: e1.max(gap),
        },
        Segment {
            piece,
            a: mid,
            b,
            value: v2,
            err: e2.max(gap),
        },
    ]
}

/// Global adaptive bisection over a set of finite pieces, each with its own
/// (possibly transformed) integrand `eval(piece, x)`.
fn adaptive<F>(pieces: &[(f64, f64)], eval: F, cfg: &QuadratureConfig) -> EvalResult
where
    F: Fn(usize, f64) -> f64,
{
    let count = Cell::new(0usize);
    let guarded = |piece: usize, x: f64| {
        count.set(count.get() + 1);
        let y = eval(piece, x);
        // isolated non-finite values (0 * inf at an essential singularity) count as 0
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    // Bisect every piece once up front: the single-rule error estimate is
    // not trusted until it has been checked against a refinement.
    for (piece, &(a, b)) in pieces.iter().enumerate() {
        if a == b {
            continue;
        }
        let (value, _) = kronrod21(&|x| guarded(piece, x), a, b);
        for child in split(&|x| guarded(piece, x), piece, a, b, value) {
            total += child.value;
            total_err += child.err;
            heap.push(child);
        }
    }

    let mut exhausted = Vec::new();
    let mut converged = total_err <= cfg.target(total);
    while !converged && heap.len() + exhausted.len() < cfg.max_subdivisions.max(pieces.len()) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let tiny = (worst.b - worst.a).abs() <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
        if tiny || mid == worst.a || mid == worst.b {
            exhausted.push(worst);
            continue;
        }
        let p = worst.piece;
        total -= worst.value;
        total_err -= worst.err;
        for child in split(&|x| guarded(p, x), p, worst.a, worst.b, worst.value) {
            total += child.value;
            total_err += child.err;
            heap.push(child);
        }
        converged = total_err <= cfg.target(total);
    }

    // re-sum to shed accumulated drift from the running updates
    let segments = heap.iter().chain(exhausted.iter());
    let (value, err) = segments.fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.err));
    EvalResult {
        value,
        err_estimate: err,
        evaluations: count.get(),
        converged: err <= cfg.target(value),
    }
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("finite limits required, got [{a}, {b}]")));
    }
    Ok(adaptive(&[(a, b)], |_, x| f(x), cfg))
}

/// Adaptive integral of `f` over `[lower, ∞)`.
///
/// The range is split at `lower + cfg.split`; the tail beyond is mapped onto
/// `(0, 1]`. Results that miss the tolerance come back with
/// `converged = false` rather than as an error.
pub fn integrate_semi_infinite<F>(f: F, lower: f64, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with_breaks(f, lower, &[lower + cfg.split], cfg)
}

/// Like [`integrate_semi_infinite`] but with caller-chosen break points.
/// Breaks at or below `lower` are ignored; the mapped tail starts at the
/// largest break.
pub fn integrate_semi_infinite_with_breaks<F>(
    f: F,
    lower: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !lower.is_finite() {
        return Err(Error::Domain(format!("lower limit must be finite, got {lower}")));
    }
    let mut points = vec![lower];
    let mut sorted: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > lower)
        .collect();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    points.extend(sorted);

    let mut pieces: Vec<(f64, f64)> = points.windows(2).map(|w| (w[0], w[1])).collect();
    let tail_start = *points.last().unwrap();
    // u = s + L (1 - v) / v for v in (0, 1]; keeps resolution near v -> 0
    let scale = if tail_start > 0.0 { tail_start } else { 1.0 };
    let tail_piece = pieces.len();
    pieces.push((0.0, 1.0));

    let eval = |piece: usize, x: f64| {
        if piece == tail_piece {
            let u = tail_start + scale * (1.0 - x) / x;
            if !u.is_finite() {
                return 0.0;
            }
            f(u) * scale / (x * x)
        } else {
            f(x)
        }
    };
    Ok(adaptive(&pieces, eval, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn exponential_and_gamma_two() {
        let r = integrate_semi_infinite(|x| (-x).exp(), 0.0, &cfg()).unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        let r = integrate_semi_infinite(|x| x * (-x).exp(), 0.0, &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        assert!(r.err_estimate >= 0.0);
    }

    #[test]
    fn finite_polynomial_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 8.0, epsilon = 1e-13);
        assert_eq!(r.evaluations, 63);
    }

    #[test]
    fn algebraic_tail() {
        // ∫_1^∞ x^{-3/2} dx = 2
        let r = integrate_semi_infinite(|x| x.powf(-1.5), 1.0, &cfg()).unwrap();
        assert!(r.converged, "{r:?}");
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r = integrate(|x| x.powf(-0.5), 0.0, 1.0, &cfg()).unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn non_finite_points_are_zero() {
        // 0 * inf style NaN near the essential singularity of exp(-1/x)/x^3
        let f = |x: f64| x.powi(-3) * (-1.0 / x).exp();
        let r = integrate_semi_infinite(f, 0.0, &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn breaks_are_sorted_and_filtered() {
        let f = |x: f64| (-x).exp();
        let r = integrate_semi_infinite_with_breaks(f, 0.0, &[5.0, -1.0, 0.5, 5.0], &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        let tight = QuadratureConfig::with_tolerances(1e-15, 1e-15).with_max_subdivisions(2);
        let r = integrate(|x| x.abs().sqrt(), -1.0, 1.0, &tight).unwrap();
        assert!(!r.converged);
        assert!(r.require_converged().is_err());
    }

    #[test]
    fn invalid_config() {
        let bad = QuadratureConfig {
            abs_tol: 0.0,
            ..cfg()
        };
        assert!(matches!(integrate(|x| x, 0.0, 1.0, &bad), Err(Error::Config(_))));
        let bad = QuadratureConfig {
            max_subdivisions: 0,
            ..cfg()
        };
        assert!(integrate_semi_infinite(|x| x, 0.0, &bad).is_err());
    }

    proptest! {
        #[test]
        fn linearity(a in -3.0f64..3.0, b in -3.0f64..3.0, rate in 0.2f64..4.0) {
            let f = |x: f64| (-rate * x).exp();
            let g = |x: f64| x * x * (-x).exp();
            let c = cfg();
            let rf = integrate_semi_infinite(f, 0.0, &c).unwrap();
            let rg = integrate_semi_infinite(g, 0.0, &c).unwrap();
            let rs = integrate_semi_infinite(|x| a * f(x) + b * g(x), 0.0, &c).unwrap();
            let bound = rs.err_estimate + a.abs() * rf.err_estimate + b.abs() * rg.err_estimate + 1e-14;
            prop_assert!((rs.value - (a * rf.value + b * rg.value)).abs() <= bound, "{:?} {:?} {:?}", rs, rf, rg);
        }
    }
}
