use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),
    #[error("at s = {s}: {source}")]
    AtS {
        s: f64,
        #[source]
        source: fraclap_core::Error,
    },
    #[error(transparent)]
    Core(#[from] fraclap_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl LabError {
    /// Process exit code: 2 for configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use fraclap_core::Error as E;
        match self {
            LabError::Config(_) => 2,
            LabError::Core(E::Config(_) | E::Parameter(_)) => 2,
            LabError::AtS {
                source: E::Config(_) | E::Parameter(_),
                ..
            } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn at_s(s: f64) -> impl FnOnce(fraclap_core::Error) -> LabError {
    move |source| LabError::AtS { s, source }
}
