use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] puremono::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path}: {detail}")]
    Config { path: String, detail: String },
    #[error("{0} oracle check(s) disagree with the engine")]
    OracleDisagreement(usize),
}

impl CliError {
    pub fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }

    /// 2 validation, 3 I/O, 4 internal invariant, 5 oracle disagreement.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 2,
            CliError::Engine(e) if e.is_validation() => 2,
            CliError::Engine(_) => 4,
            CliError::Io { .. } => 3,
            CliError::OracleDisagreement(_) => 5,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
