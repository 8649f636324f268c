use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    /// Unreadable or inconsistent configuration (exit code 2).
    #[error("config error: {0}")]
    Config(String),
    /// A numerical evaluation failed outright (exit code 1).
    #[error("evaluation failed: {0}")]
    Eval(#[from] wdvv_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Io(_) => 2,
            Self::Eval(_) => 1,
        }
    }
}
