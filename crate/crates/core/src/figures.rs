//! Grid data behind the four standard plots, emitted as CSV.
//!
//! | id   | columns                                   | grid                               |
//! |------|-------------------------------------------|------------------------------------|
//! | fig1 | `p`, `L` for `k = 4`, `l = 1..4`          | `p ∈ [0.01, 10]`, linear           |
//! | fig2 | `p`, `L` for `k = 1`, `l = 1..3`          | `p ∈ [0.01, 100]`, log-spaced      |
//! | fig3 | `x`, Fréchet transform of `Fr(1/2, ·)` at `γ = 1/3` | `x ∈ [1e-12, 10]`, log-spaced |
//! | fig4 | `x`, reduced `g^a_α` and reduced `Fr(γ, ·)` for `(α, γ) = (1/2, 1), (1/4, 1/3)` | `x ∈ (0, 3]`, linear |
//!
//! The fig3 grid is logarithmic because the curve peaks near `x ≈ 1e-7`.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::distributions::{frechet_pdf, levy_asymptotic, LevyIndex, RationalShape, Shape};
use crate::error::{Error, Result};
use crate::ftransform::{frechet_transform_frechet_half, FRECHET_HALF_ABSCISSA};
use crate::laplace::{laplace_frechet, LaplaceConfig, LaplaceQuery, Method};
use crate::mellin::ContourConfig;

pub const DEFAULT_POINTS: usize = 400;

const FIG3_RANGE: (f64, f64) = (1e-12, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown figure '{s}', expected fig1..fig4")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRequest {
    pub figure: FigureId,
    pub output: PathBuf,
    pub points: usize,
}

impl FigureRequest {
    pub fn new(figure: FigureId, output: impl Into<PathBuf>, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Config(format!(
                "need at least 2 grid points, got {points}"
            )));
        }
        Ok(Self {
            figure,
            output: output.into(),
            points,
        })
    }
}

/// Column-major table: a header and one row per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Comma-separated, header first, LF line endings, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    let mut g: Vec<f64> = linspace(la, lb, n).into_iter().map(f64::exp).collect();
    g[0] = a;
    g[n - 1] = b;
    g
}

fn tabulate<F>(grid: &[f64], ncols: usize, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    grid.par_iter()
        .map(|&x| {
            let vals = f(x)?;
            debug_assert_eq!(vals.len(), ncols);
            Ok(std::iter::once(x).chain(vals).collect())
        })
        .collect()
}

fn laplace_table(k: u32, ls: &[u32], grid: &[f64]) -> Result<FigureData> {
    let shapes: Vec<RationalShape> = ls
        .iter()
        .map(|&l| RationalShape::new(l, k))
        .collect::<Result<_>>()?;
    let cfg = LaplaceConfig::default();
    let rows = tabulate(grid, shapes.len(), |p| {
        shapes
            .iter()
            .map(|&s| {
                let q = LaplaceQuery::new(s, p, Method::MeijerG)?;
                Ok(laplace_frechet(&q, &cfg)?.require_converged()?.value)
            })
            .collect()
    })?;
    let mut header = vec!["p".to_string()];
    header.extend(ls.iter().map(|l| format!("L_l{l}_k{k}")));
    Ok(FigureData { header, rows })
}

/// Golden-section search for the maximiser of a unimodal function on
/// `(0, ∞)`, bracketed by doubling/halving from `x0`; stops once the
/// bracket is narrower than `tol`.
pub fn unimodal_argmax<F: Fn(f64) -> f64>(f: F, x0: f64, tol: f64) -> f64 {
    let mut x = x0;
    let mut fx = f(x);
    loop {
        let (up, down) = (f(2.0 * x), f(0.5 * x));
        if up > fx {
            x *= 2.0;
            fx = up;
        } else if down > fx {
            x *= 0.5;
            fx = down;
        } else {
            break;
        }
    }
    let (mut a, mut b) = (0.5 * x, 2.0 * x);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Parameter pairs for the reduced comparison: `(α, γ)` with `t = γx/(1+γ)^{1+1/γ}`.
pub const FIG4_PAIRS: [(f64, f64); 2] = [(0.5, 1.0), (0.25, 1.0 / 3.0)];

fn reduced(f: impl Fn(f64) -> f64, x0: f64) -> impl Fn(f64) -> f64 {
    let peak = f(unimodal_argmax(&f, x0, 1e-10));
    move |x| f(x) / peak
}

fn fig4(grid: &[f64]) -> Result<FigureData> {
    let mut curves: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = Vec::new();
    for (alpha, gamma) in FIG4_PAIRS {
        let idx = LevyIndex::new(alpha)?;
        let shape = Shape::new(gamma)?;
        let scale = gamma / (1.0 + gamma).powf(1.0 + 1.0 / gamma);
        let mode = (gamma / (1.0 + gamma)).powf(1.0 / gamma);
        let levy = move |x: f64| {
            if x > 0.0 {
                levy_asymptotic(idx, scale * x).unwrap_or(0.0)
            } else {
                0.0
            }
        };
        let fr = move |x: f64| frechet_pdf(shape, x).unwrap_or(0.0);
        curves.push(Box::new(reduced(levy, mode)));
        curves.push(Box::new(reduced(fr, mode)));
    }
    let rows = tabulate(grid, curves.len(), |x| Ok(curves.iter().map(|c| c(x)).collect()))?;
    Ok(FigureData {
        header: ["x", "levy_a1_2", "frechet_g1", "levy_a1_4", "frechet_g1_3"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

/// Computes the data for `id` on `points` grid points.
pub fn figure_data(id: FigureId, points: usize) -> Result<FigureData> {
    if points < 2 {
        return Err(Error::Config(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    match id {
        FigureId::Fig1 => laplace_table(4, &[1, 2, 3, 4], &linspace(0.01, 10.0, points)),
        FigureId::Fig2 => laplace_table(1, &[1, 2, 3], &logspace(0.01, 100.0, points)),
        FigureId::Fig3 => {
            let shape = Shape::new(1.0 / 3.0)?;
            let cfg = ContourConfig::default().with_abscissa(FRECHET_HALF_ABSCISSA);
            let rows = tabulate(&logspace(FIG3_RANGE.0, FIG3_RANGE.1, points), 1, |x| {
                Ok(vec![
                    frechet_transform_frechet_half(shape, x, &cfg)?
                        .require_converged()?
                        .value,
                ])
            })?;
            Ok(FigureData {
                header: vec!["x".into(), "frechet_half_g1_3".into()],
                rows,
            })
        }
        FigureId::Fig4 => {
            let grid: Vec<f64> = (1..=points).map(|i| 3.0 * i as f64 / points as f64).collect();
            fig4(&grid)
        }
    }
}

/// Computes and writes the figure, returning the data for inspection.
pub fn write_figure(req: &FigureRequest) -> Result<FigureData> {
    let data = figure_data(req.figure, req.points)?;
    write_csv_file(&data, &req.output)?;
    Ok(data)
}

pub fn write_csv_file(data: &FigureData, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    data.write_csv(std::io::BufWriter::new(file))
}

/// Sup-norm distance between reduced curves, `(γ = 1, γ = 1/3)`.
pub fn fig4_sup_distances(data: &FigureData) -> Option<(f64, f64)> {
    let dist = |a: &str, b: &str| -> Option<f64> {
        let (u, v) = (data.column(a)?, data.column(b)?);
        Some(u.iter().zip(&v).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
    };
    Some((
        dist("levy_a1_2", "frechet_g1")?,
        dist("levy_a1_4", "frechet_g1_3")?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = linspace(0.01, 10.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!((g[0], g[4]), (0.01, 10.0));
        let g = logspace(0.01, 100.0, 5);
        assert!((g[2] - 1.0).abs() < 1e-15);
        assert_eq!(g[4], 100.0);
    }

    #[test]
    fn figure_ids() {
        for id in FigureId::ALL {
            assert_eq!(id.to_string().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig5".parse::<FigureId>().is_err());
        assert!(FigureRequest::new(FigureId::Fig1, "a.csv", 1).is_err());
        assert!(figure_data(FigureId::Fig1, 0).is_err());
    }

    #[test]
    fn argmax_of_frechet_mode() {
        for g in [1.0 / 3.0, 1.0, 2.0] {
            let s = Shape::new(g).unwrap();
            let x = unimodal_argmax(|x| frechet_pdf(s, x).unwrap(), 1.0, 1e-10);
            let mode = (g / (1.0 + g)).powf(1.0 / g);
            assert!((x - mode).abs() < 1e-8, "{g}: {x} vs {mode}");
        }
    }

    #[test]
    fn fig1_values() {
        let d = figure_data(FigureId::Fig1, 20).unwrap();
        assert_eq!(d.header, ["p", "L_l1_k4", "L_l2_k4", "L_l3_k4", "L_l4_k4"]);
        let first = &d.rows[0];
        assert_eq!(first[0], 0.01);
        // heavier tails decay faster near p = 0
        assert!(first[1..].windows(2).all(|w| w[0] < w[1]));
        assert!(first[2..].iter().all(|v| (v - 1.0).abs() < 0.2));
        // l = 1: γ = 1/4, 1 - L ≈ Γ(3/4) p^{1/4} is still large at p = 0.01
        assert!((first[1] - 0.686_316_290_802_961).abs() < 1e-9);
        for row in &d.rows {
            assert!(row[1..].iter().all(|&v| v > 0.0 && v <= 1.0));
        }
    }

    #[test]
    fn fig2_decreasing() {
        let d = figure_data(FigureId::Fig2, 30).unwrap();
        for j in 1..=3 {
            let col = d.column(&d.header[j]).unwrap();
            assert!(col.windows(2).all(|w| w[1] < w[0]));
            assert!(col.iter().all(|&v| v > 0.0 && v <= 1.0));
        }
    }

    #[test]
    fn fig3_interior_maximum() {
        let d = figure_data(FigureId::Fig3, 120).unwrap();
        let col = d.column("frechet_half_g1_3").unwrap();
        let peak = col
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        assert!(peak > 0 && peak + 1 < col.len());
        assert!(col[..=peak].windows(2).all(|w| w[1] > w[0]));
        assert!(col[peak..].windows(2).all(|w| w[1] < w[0]));
        assert_eq!(d.rows.last().unwrap()[0], 10.0);
    }

    #[test]
    fn fig4_reduced_and_ordered() {
        let d = figure_data(FigureId::Fig4, DEFAULT_POINTS).unwrap();
        for j in 1..d.header.len() {
            let col = d.column(&d.header[j]).unwrap();
            let max = col.iter().cloned().fold(0.0, f64::max);
            assert!(col.iter().all(|&v| v >= 0.0));
            assert!(max <= 1.0 + 1e-12 && max > 0.97, "{}: {max}", d.header[j]);
        }
        let (d1, d3) = fig4_sup_distances(&d).unwrap();
        assert!(d3 < d1, "{d3} vs {d1}");
    }

    #[test]
    fn csv_format() {
        let d = FigureData {
            header: vec!["x".into(), "y".into()],
            rows: vec![vec![0.1, 1.0 / 3.0], vec![2.0, -1e-300]],
        };
        let s = d.to_csv_string().unwrap();
        assert_eq!(
            s,
            "x,y\n1.0000000000000001e-1,3.3333333333333331e-1\n2.0000000000000000e0,-1.0000000000000000e-300\n"
        );
        for line in s.lines().skip(1) {
            for field in line.split(',') {
                let v: f64 = field.parse().unwrap();
                assert!(d.rows.iter().flatten().any(|&w| w == v));
            }
        }
    }

    #[test]
    fn write_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let req = FigureRequest::new(FigureId::Fig4, &path, 10).unwrap();
        let data = write_figure(&req).unwrap();
        let first = std::fs::read(&path).unwrap();
        write_figure(&req).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());
        assert_eq!(String::from_utf8(first).unwrap(), data.to_csv_string().unwrap());
        let bad = FigureRequest::new(FigureId::Fig4, dir.path().join("no/such/dir.csv"), 10).unwrap();
        assert!(matches!(write_figure(&bad), Err(Error::Io(_))));
    }
}
