use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gepgap::Error),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 when a size cap is hit, 4 for a disconnected graph.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(gepgap::Error::CapExceeded { .. }) => 3,
            Self::Core(gepgap::Error::NotIrreducible) => 4,
            Self::Io(_) => 1,
            _ => 2,
        }
    }
}
