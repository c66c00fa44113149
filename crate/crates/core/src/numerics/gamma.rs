use std::f64::consts::PI;

use super::{check_finite, ComplexValue};
use crate::error::{Error, Result};

// Godfrey's coefficients for g = 607/128, fifteen terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;
const LN_PI: f64 = 1.144_729_885_849_400_174_14;
const LN_2: f64 = std::f64::consts::LN_2;

/// Principal branch of `log Γ(s)`.
///
/// Uses the Lanczos approximation for `Re(s) >= 1/2` and the reflection
/// formula otherwise, with the branch of `log sin(πs)` continued through
/// the upper half plane so the result agrees with the analytic
/// continuation of `ln Γ` from the positive real axis. On the negative
/// real axis the imaginary part is the limit from above.
pub fn log_gamma(s: ComplexValue) -> Result<ComplexValue> {
    check_finite(s, "log_gamma argument")?;
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::Pole(format!("{}", s.re)));
    }
    Ok(log_gamma_unchecked(s))
}

pub(crate) fn log_gamma_unchecked(s: ComplexValue) -> ComplexValue {
    if s.re >= 0.5 {
        lanczos(s)
    } else if s.im < 0.0 {
        reflect(s.conj()).conj()
    } else {
        reflect(s)
    }
}

fn lanczos(s: ComplexValue) -> ComplexValue {
    let z = s - 1.0;
    let mut series = ComplexValue::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + series.ln()
}

// Upper half plane (Im s >= 0), Re s < 1/2.
fn reflect(s: ComplexValue) -> ComplexValue {
    // log(1 - e^{2πis}) is analytic for Im s > 0. Shift by an integer
    // first: the expression is periodic and the shift keeps the
    // cancellation near the real-axis zeros under control.
    let r = s - s.re.round();
    let one_minus = if r.im > 5.0 {
        ComplexValue::new(1.0, 0.0) - (ComplexValue::i() * 2.0 * PI * r).exp()
    } else {
        let ipr = ComplexValue::i() * PI * r;
        ComplexValue::new(0.0, -2.0) * (PI * r).sin() * ipr.exp()
    };
    let log_sin = one_minus.ln() - ComplexValue::i() * PI * s + ComplexValue::new(-LN_2, PI / 2.0);
    LN_PI - log_sin - lanczos(1.0 - s)
}

// sin(πx) with the argument reduced to [-1/2, 1/2] first
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `ln |Γ(x)|` for real `x` away from the poles.
pub fn log_gamma_real(x: f64) -> Result<f64> {
    log_gamma(ComplexValue::new(x, 0.0)).map(|v| v.re)
}

/// `Γ(x)` for real `x`, not a nonpositive integer.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument must be finite, got {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(format!("{x}")));
    }
    if x >= 0.5 {
        Ok(lanczos(ComplexValue::new(x, 0.0)).re.exp())
    } else {
        let g = lanczos(ComplexValue::new(1.0 - x, 0.0)).re.exp();
        Ok(PI / (sin_pi(x) * g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn special_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(half.re, 0.5 * PI.ln(), max_relative = 1e-14);
        assert_eq!(half.im, 0.0);
    }

    // Reference values computed with mpmath.loggamma at 30 digits.
    #[test]
    fn matches_reference_table() {
        let table = [
            (
                c(3.7, 2.1),
                c(0.785_346_958_073_822_388_76, 2.583_012_925_115_262_248_6),
            ),
            (
                c(0.25, -7.5),
                c(-11.365_620_394_646_528_259, -7.220_462_821_847_432_420_9),
            ),
            (
                c(-2.3, 0.7),
                c(-1.266_429_485_193_089_379_8, -8.076_782_366_712_055_632_7),
            ),
            (
                c(-7.5, -3.2),
                c(-17.141_261_551_371_358_811, 18.395_212_732_949_410_359),
            ),
            (
                c(150.0, 40.0),
                c(594.720_403_716_019_617_46, 200.759_261_643_739_059_17),
            ),
            (
                c(0.01, 0.01),
                c(4.252_825_229_690_082_695_2, -0.791_006_627_929_438_303_52),
            ),
            (c(-0.5, 0.0), c(1.265_512_123_484_645_396_5, -PI)),
            (
                c(12.0, -180.0),
                c(-222.097_597_364_126_638_41, -772.429_509_856_147_103_03),
            ),
        ];
        for (s, want) in table {
            let got = log_gamma(s).unwrap();
            assert!(close(got, want, 1e-13), "s = {s}: got {got}, want {want}");
        }
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(x, 0.0)), Err(Error::Pole(_))));
            assert!(matches!(gamma_real(x), Err(Error::Pole(_))));
        }
        assert!(log_gamma(c(f64::NAN, 0.0)).is_err());
        assert!(log_gamma(c(1.0, f64::INFINITY)).is_err());
        // just off the pole is fine
        assert!(log_gamma(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn near_negative_integers() {
        // Γ(-3 + δ) ≈ -1/(6δ)
        let d = 1e-7;
        let g = gamma_real(-3.0 + d).unwrap();
        assert_relative_eq!(g, -1.0 / (6.0 * d), max_relative = 1e-6);
        let lg = log_gamma(c(-3.0 + d, 0.0)).unwrap();
        assert_relative_eq!(lg.re, g.abs().ln(), max_relative = 1e-12);
    }

    #[test]
    fn gamma_real_values() {
        assert_relative_eq!(gamma_real(0.5).unwrap(), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_real(5.0).unwrap(), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_real(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            log_gamma_real(10.0).unwrap(),
            362_880f64.ln(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn conjugate_symmetry() {
        for s in [c(0.3, 2.0), c(-4.2, 0.5), c(7.0, 30.0)] {
            let a = log_gamma(s).unwrap();
            let b = log_gamma(s.conj()).unwrap();
            assert!(close(a, b.conj(), 1e-15));
        }
    }

    // Gauss–Legendre multiplication: ln Γ(nz) = (nz - 1/2) ln n - (n-1)/2 ln 2π + Σ_j ln Γ(z + j/n)
    fn multiplication_rhs(z: ComplexValue, n: u32) -> ComplexValue {
        let nf = n as f64;
        let mut acc = (z * nf - 0.5) * nf.ln() - (nf - 1.0) / 2.0 * (2.0 * PI).ln();
        for j in 0..n {
            acc += log_gamma(z + j as f64 / nf).unwrap();
        }
        acc
    }

    #[test]
    fn multiplication_formula_at_fixed_point() {
        let s = c(3.7, 2.1);
        let lhs = log_gamma(s).unwrap();
        let rhs = multiplication_rhs(s / 3.0, 3);
        assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    proptest::proptest! {
        #[test]
        fn multiplication_formula(re in 0.1f64..5.0, im in -5.0f64..5.0, n in 2u32..=4) {
            let z = c(re, im);
            let lhs = log_gamma(z * n as f64).unwrap();
            let rhs = multiplication_rhs(z, n);
            proptest::prop_assert!(close(lhs, rhs, 1e-12), "z = {}, n = {}: {} vs {}", z, n, lhs, rhs);
        }

        #[test]
        fn recurrence(re in 0.1f64..5.0, im in -5.0f64..5.0) {
            let s = c(re, im);
            let d = log_gamma(s + 1.0).unwrap() - log_gamma(s).unwrap() - s.ln();
            proptest::prop_assert!(d.norm() < 1e-13, "s = {}: residual {}", s, d);
        }

        #[test]
        fn recurrence_left_half_plane(re in -30.0f64..0.5, im in 0.05f64..20.0) {
            let s = c(re, im);
            let d = log_gamma(s + 1.0).unwrap() - log_gamma(s).unwrap() - s.ln();
            proptest::prop_assert!(d.norm() < 1e-12 * (1.0 + s.norm()), "s = {}: residual {}", s, d);
        }
    }
}
