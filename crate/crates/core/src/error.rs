use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is well-formed but outside an admissible interval.
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Range {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("need at least {needed} samples, got {got}")]
    Size { needed: usize, got: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("integration diverged at t = {t}")]
    Divergence { t: f64 },

    #[error("more than {limit} impacts before t = {t}; trajectory is chattering")]
    Chattering { limit: usize, t: f64 },

    #[error("point ({x}, {y}) is unreachable for links {l1} and {l2}")]
    Unreachable { x: f64, y: f64, l1: f64, l2: f64 },

    #[error("degenerate normalization: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("class {class} has {count} members, fewer than {folds} folds")]
    Stratification {
        class: usize,
        count: usize,
        folds: usize,
    },

    #[error("label {label} out of range for {classes} classes")]
    Label { label: usize, classes: usize },

    #[error("class {0} has no samples")]
    EmptyClass(usize),

    #[error("force {0} N exceeds the 12 N recovery envelope")]
    RecoveryImpossible(f64),

    #[error("no fuzzy rule fired")]
    NoDecision,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
