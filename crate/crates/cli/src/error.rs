//! CLI error classification: exit code 1 for failed mathematical checks
//! (with a witness in the report), exit code 2 for unusable input.

use softtop::Error as EngineError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {detail}")]
    Parse { path: String, detail: String },

    #[error("{path}: unknown {what} label {label:?}")]
    UnknownLabel {
        path: String,
        what: &'static str,
        label: String,
    },

    #[error("{path}: no soft set named {name:?}")]
    UnknownName { path: String, name: String },

    #[error("{path}: not a soft topology: {witness}")]
    AxiomViolation { path: String, witness: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // A violated axiom or a violated lemma is a failed mathematical
            // check; everything else means the input could not be used.
            CliError::AxiomViolation { .. } => 1,
            CliError::Engine(EngineError::LemmaViolation(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
