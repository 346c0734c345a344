use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{source_name}:{line}: synset `{synset}` references unknown synset `{target}`")]
    DanglingReference {
        source_name: String,
        line: usize,
        synset: String,
        target: String,
    },

    #[error("hypernym cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("unknown synset `{0}`")]
    NotFound(String),

    #[error("`{0}` has no translation in the bilingual")]
    NoTranslation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("stage `{stage}` needs `{artifact}`; run `{producer}` first")]
    Dependency {
        stage: String,
        artifact: PathBuf,
        producer: String,
    },

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(source_name: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dependency { .. } => 2,
            Error::Config(_) => 3,
            _ => 1,
        }
    }
}
