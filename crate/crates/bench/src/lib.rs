//! Fixtures shared by the benchmarks.

use frechet_core::RationalShape;

/// Shapes `l/k` with `1 <= l, k <= 4`, reduced and deduplicated.
pub fn shapes() -> Vec<RationalShape> {
    let mut out: Vec<RationalShape> = Vec::new();
    for l in 1..=4 {
        for k in 1..=4 {
            let s = RationalShape::new(l, k).expect("positive parts");
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Laplace variables spanning the small, moderate and large regimes.
pub const P_VALUES: [f64; 4] = [0.01, 0.5, 5.0, 100.0];
