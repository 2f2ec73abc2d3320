use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: input/configuration problems
/// (`InvalidInput`, `OutOfRange`, `Resource`, `Domain`) and numerical
/// failures (everything else). The CLI maps them to exit codes 2 and 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("grid resolution insufficient: {0}")]
    GridResolution(String),

    #[error("no eigenvalue in window [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("no tunneling barrier: {0}")]
    NoBarrier(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("time step violates spectral stability bound: dt * E_max / hbar = {0} >= pi")]
    Stability(f64),

    #[error("non-finite amplitude at step {0}")]
    NotFinite(usize),

    #[error("wavefunction reached the grid boundary: {0}")]
    BoundaryEscape(String),

    #[error("zero-norm wavefunction")]
    ZeroNorm,

    #[error("output error: {0}")]
    Output(String),
}

impl Error {
    /// True for errors caused by bad inputs rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::OutOfRange { .. }
                | Error::Resource(_)
                | Error::Domain(_)
        )
    }

    pub(crate) fn out_of_range(what: &'static str, value: impl ToString, range: &'static str) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            range,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
