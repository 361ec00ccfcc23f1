use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ctw_core::Error),
    #[error("{0}")]
    Check(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// 1 usage or parse, 2 input outside the solver's scope, 3 failed
    /// invariant or cross-check.
    pub fn exit_code(&self) -> i32 {
        use ctw_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Io(_) | CliError::Usage(_) => 1,
            CliError::Check(_) => 3,
            CliError::Core(e) => match e {
                E::NotTreewidth2 { .. }
                | E::TooLarge { .. }
                | E::Disconnected
                | E::NoConnectedLayout
                | E::NotSeriesParallel
                | E::NotBiconnected => 2,
                E::WitnessCostMismatch { .. } | E::MalformedTree(_) => 3,
                _ => 1,
            },
        }
    }
}
