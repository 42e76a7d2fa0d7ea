//! Front end for `stabq-core`: JSON spec files, command dispatch and reports.

pub mod report;
pub mod run;
pub mod specfile;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] stabq_core::Error),
}

impl CliError {
    /// 2 for invalid input, 3 when a command needs a mobile code, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use stabq_core::Error as E;
        match self {
            CliError::Io(..) | CliError::Syntax { .. } | CliError::Invalid(_) => 2,
            CliError::Core(E::NotMobile(_)) => 3,
            CliError::Core(E::Structure(_) | E::Syntax { .. } | E::NotIsotropic(..) | E::CompositeModulus(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}
