#![allow(clippy::excessive_precision)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frechet_core::figures::DEFAULT_POINTS;
use frechet_core::{
    frechet_kernel, frechet_moment, frechet_transform_frechet_half, frechet_transform_levy, laplace_frechet,
    levy_moment, write_figure, ContourConfig, Error, EvalResult, FigureId, FigureRequest,
    FrechetKernelParams, LaplaceConfig, LaplaceQuery, LevyIndex, Method, RationalShape, Shape,
    FRECHET_HALF_ABSCISSA,
};

mod selfcheck;

use selfcheck::Profile;

const EXIT_ARGS: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_IO: u8 = 3;

/// Laplace transform of the Fréchet distribution and related quantities.
#[derive(Debug, Parser)]
#[command(name = "frechet-laplace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate L[Fr(l/k, x); p].
    Laplace {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Meijer)]
        method: MethodArg,
    },
    /// Write the data behind a figure as CSV.
    ///
    /// fig1: p in [0.01, 10] (linear), L for k = 4, l = 1..4.
    /// fig2: p in [0.01, 100] (log-spaced), L for k = 1, l = 1..3.
    /// fig3: x in [1e-12, 10] (log-spaced), transform of Fr(1/2, .) at gamma = 1/3.
    /// fig4: x in (0, 3] (linear), reduced asymptotic Levy and Frechet densities
    /// for (alpha, gamma) = (1/2, 1) and (1/4, 1/3).
    #[command(verbatim_doc_comment)]
    Figure {
        #[arg(value_enum)]
        id: FigureArg,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POINTS as u32, value_parser = clap::value_parser!(u32).range(2..))]
        points: u32,
    },
    /// Power moments E[X^mu].
    Moment {
        #[command(subcommand)]
        dist: MomentCmd,
    },
    /// Frechet integral transforms.
    Transform {
        #[command(subcommand)]
        kind: TransformCmd,
    },
    /// Run the built-in invariant suite.
    Selfcheck {
        #[arg(long, value_enum, env = "FRECHET_LAPLACE_PROFILE", default_value_t = Profile::Default)]
        profile: Profile,
        /// Print check names without running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Meijer,
    Quadrature,
    Auto,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl From<FigureArg> for FigureId {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig1 => FigureId::Fig1,
            FigureArg::Fig2 => FigureId::Fig2,
            FigureArg::Fig3 => FigureId::Fig3,
            FigureArg::Fig4 => FigureId::Fig4,
        }
    }
}

#[derive(Debug, Subcommand)]
enum MomentCmd {
    /// Frechet moment, finite for mu < gamma.
    Frechet {
        #[arg(long)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
    },
    /// One-sided Levy moment, finite for mu < alpha.
    Levy {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
    },
}

#[derive(Debug, Subcommand)]
enum TransformCmd {
    /// Transform of the one-sided Levy density g_alpha, i.e. Fr(gamma * alpha, x).
    Levy {
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        at: GammaX,
    },
    /// The kernel sigma_gamma(x, t).
    Kernel {
        #[command(flatten)]
        at: GammaX,
        #[arg(long)]
        t: f64,
    },
    /// Transform of Fr(1/2, .) in closed form.
    FrechetHalf {
        #[command(flatten)]
        at: GammaX,
    },
}

#[derive(Debug, Args)]
struct GammaX {
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    x: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } => EXIT_NUMERIC,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_ARGS,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn print_eval(label: &str, r: &EvalResult) {
    println!("method       {label}");
    println!("value        {:.16e}", r.value);
    println!("err_estimate {:.3e}", r.err_estimate);
}

fn converged(r: EvalResult) -> Result<EvalResult, Failure> {
    Ok(r.require_converged()?)
}

fn run_laplace(l: u32, k: u32, p: f64, method: MethodArg) -> Outcome {
    let shape = RationalShape::new(l, k)?;
    let cfg = LaplaceConfig::default();
    let eval = |m: Method| -> Result<EvalResult, Failure> {
        let r = laplace_frechet(&LaplaceQuery::new(shape, p, m)?, &cfg)?;
        converged(r)
    };
    match method {
        MethodArg::Both => {
            let a = eval(Method::MeijerG)?;
            let b = eval(Method::Quadrature)?;
            print_eval("meijer-g", &a);
            print_eval("quadrature", &b);
            println!("rel_diff     {:.3e}", (a.value - b.value).abs() / b.value.abs());
        }
        MethodArg::Meijer => print_eval("meijer-g", &eval(Method::MeijerG)?),
        MethodArg::Quadrature => print_eval("quadrature", &eval(Method::Quadrature)?),
        MethodArg::Auto => {
            let label = if p >= 1e-6 {
                "auto (meijer-g)"
            } else {
                "auto (quadrature)"
            };
            print_eval(label, &eval(Method::Auto)?)
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Laplace { l, k, p, method } => run_laplace(l, k, p, method),
        Command::Figure { id, output, points } => {
            let req = FigureRequest::new(id.into(), &output, points as usize)?;
            let data = write_figure(&req)?;
            eprintln!("wrote {} rows to {}", data.rows.len(), output.display());
            Ok(())
        }
        Command::Moment { dist } => {
            let (v, sym) = match dist {
                MomentCmd::Frechet { gamma, mu } => (frechet_moment(Shape::new(gamma)?, mu), "γ"),
                MomentCmd::Levy { alpha, mu } => (levy_moment(LevyIndex::new(alpha)?, mu), "α"),
            };
            let v = v.map_err(|e| match e {
                Error::DivergentMoment { mu, bound } => Failure {
                    code: EXIT_ARGS,
                    message: format!(
                        "moment of order {mu} diverges; valid range is −∞ < μ < {sym} ({sym} = {bound})"
                    ),
                },
                e => e.into(),
            })?;
            println!("{v:.16e}");
            Ok(())
        }
        Command::Transform { kind } => {
            match kind {
                TransformCmd::Levy { alpha, at } => {
                    let v = frechet_transform_levy(LevyIndex::new(alpha)?, Shape::new(at.gamma)?, at.x)?;
                    println!("{v:.16e}");
                }
                TransformCmd::Kernel { at, t } => {
                    let v = frechet_kernel(FrechetKernelParams::new(Shape::new(at.gamma)?, at.x, t)?)?;
                    println!("{v:.16e}");
                }
                TransformCmd::FrechetHalf { at } => {
                    let cfg = ContourConfig::default().with_abscissa(FRECHET_HALF_ABSCISSA);
                    let r = converged(frechet_transform_frechet_half(Shape::new(at.gamma)?, at.x, &cfg)?)?;
                    print_eval("meijer-g", &r);
                }
            }
            Ok(())
        }
        Command::Selfcheck { profile, list } => {
            if list {
                let mut out = std::io::stdout().lock();
                for name in selfcheck::names() {
                    if writeln!(out, "{name}").is_err() {
                        break;
                    }
                }
                return Ok(());
            }
            if selfcheck::run(profile) {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_NUMERIC,
                    message: "self-check failed".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ARGS)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if f.code == EXIT_ARGS {
                eprintln!("\nFor more information, try '--help'.");
            }
            ExitCode::from(f.code)
        }
    }
}
