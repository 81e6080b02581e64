//! Harness errors and their process exit codes.

use thiserror::Error;

use crate::adapt::AdaptError;
use crate::metamodel::ModelError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("config error: {message}")]
    ConfigSemantic { message: String },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Adapt(#[from] AdaptError),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("refusing to write an empty trajectory")]
    EmptyTrajectory,
}

impl HarnessError {
    pub fn io(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> HarnessError {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }

    /// Process exit code: 0 success, 2 config, 3 language/validation,
    /// 4 runtime rule failure, 5 adaptation failure, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::ConfigParse { .. } | HarnessError::ConfigSemantic { .. } => 2,
            HarnessError::Model(ModelError::Lang(_)) => 3,
            HarnessError::Model(ModelError::Step { .. }) => 4,
            HarnessError::Model(_) => 2,
            HarnessError::Adapt(AdaptError::Lang(_)) => 3,
            HarnessError::Adapt(_) => 5,
            HarnessError::Io { .. } | HarnessError::EmptyTrajectory => 1,
        }
    }
}
