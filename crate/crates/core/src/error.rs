use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument sits on a pole of a gamma factor.
    #[error("pole of the gamma function at {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// An integration did not reach its tolerance.
    #[error(
        "no convergence: estimate {value:e} with error {err_estimate:e} after {evaluations} evaluations"
    )]
    NonConvergence {
        value: f64,
        err_estimate: f64,
        evaluations: usize,
    },

    #[error("invalid contour: {0}")]
    Contour(String),

    /// Requested power moment is infinite; `bound` is the supremum of valid orders.
    #[error("divergent moment: mu = {mu} is outside -inf < mu < {bound}")]
    DivergentMoment { mu: f64, bound: f64 },

    #[error("no Laplace transform available for the target")]
    MissingLaplace,

    #[error("no function available for the target")]
    MissingFunction,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
