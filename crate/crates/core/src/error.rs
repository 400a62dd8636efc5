use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid construction parameters (grid size, domain bounds, dimension).
    #[error("configuration error: {0}")]
    Config(String),
    /// A sampled or supplied value is not finite.
    #[error("data error: {0}")]
    Data(String),
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two grid functions do not share a grid.
    #[error("shape error: {0}")]
    Shape(String),
    /// A function that must vanish at the box boundary does not.
    #[error("support error: {0}")]
    Support(String),
    /// Invalid parameter combination for a check (e.g. strip widths).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Linear algebra failure.
    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
