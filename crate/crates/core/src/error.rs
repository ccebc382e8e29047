use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used to map errors onto process exit codes and
/// C status codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Domain,
    Numerical,
}

impl ErrorClass {
    /// Process exit code of the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Config => 2,
            ErrorClass::Domain => 3,
            ErrorClass::Numerical => 4,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point lies outside the admissible region: {0}")]
    OutOfRegion(String),

    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),

    #[error("motion is not timelike (gamma^-2 = {gamma_inv_sq:.6e})")]
    Superluminal { gamma_inv_sq: f64 },

    #[error("matrix is singular and cannot be inverted")]
    Singular,

    #[error("optical metric component g_00 = {g00:.6e} is degenerate; no medium interpretation")]
    SingularMedium { g00: f64 },

    #[error("point lies outside the optical light cylinder (chi^-2 = {chi_inv_sq:.6e})")]
    OutsideOpticalCylinder { chi_inv_sq: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("minimizer reached the edge of the search window [{lo:.17e}, {hi:.17e}] at {at:.17e}")]
    WindowBoundary { lo: f64, hi: f64, at: f64 },

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("point at |x| = {radius:.6e} m lies inside the source (radius {body_radius:.6e} m)")]
    InteriorPoint { radius: f64, body_radius: f64 },

    #[error("weak-field approximation violated: Phi_g/c^2 = {ratio:.6e}")]
    WeakFieldViolation { ratio: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) | Error::InvalidInput(_) | Error::InvalidGrid(_) => {
                ErrorClass::Config
            }
            Error::Singular
            | Error::Quadrature(_)
            | Error::WindowBoundary { .. }
            | Error::Sampling(_) => {
                ErrorClass::Numerical
            }
            _ => ErrorClass::Domain,
        }
    }
}
