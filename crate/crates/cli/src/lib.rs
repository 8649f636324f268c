//! Seeded batch driver over `wdvv-core`: JSON configs in, JSON residual
//! reports out.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{Command, RunConfig};
pub use error::RunError;
pub use report::ResidualReport;
pub use run::run;
