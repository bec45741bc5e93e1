use std::io;
use std::path::PathBuf;

use adgraph_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid --at binding `{0}`: expected name=value with a finite number")]
    Binding(String),
    #[error("variable `{0}` is bound twice in --at")]
    DuplicateBinding(String),
    #[error("unknown variable `{0}` for --wrt")]
    UnknownWrt(String),
    #[error("forward mode needs --wrt when the expression has more than one variable")]
    MissingWrt,
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    /// Process exit status for this failure. 1 is reserved for a failed
    /// gradient check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::UnboundVariable(_)) => 3,
            CliError::Core(CoreError::Domain(_) | CoreError::PerturbedDomain { .. }) => 4,
            CliError::Core(_) | CliError::Binding(_) | CliError::DuplicateBinding(_) => 2,
            CliError::Tolerance(_) => 2,
            CliError::UnknownWrt(_) | CliError::MissingWrt => 5,
            CliError::Write { .. } => 6,
        }
    }
}
