use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operator was called with inputs violating its shape contract.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("non-physical state (rho = {rho}, p = {p}){}", location_suffix(*.cell))]
    NonPhysical {
        rho: f64,
        p: f64,
        cell: Option<(isize, isize)>,
    },

    #[error("non-finite value in residual at cell (i = {}, j = {})", .cell.0, .cell.1)]
    NonFinite { cell: (isize, isize) },

    #[error("no solution: {0}")]
    NoSolution(String),

    /// `line` is absent for problems not tied to one line, such as a
    /// missing key.
    #[error("configuration error{}, key `{key}`: {message}", line_suffix(*.line))]
    Config {
        line: Option<usize>,
        key: String,
        message: String,
    },

    #[error("parse error in {path:?} at line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn line_suffix(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

fn location_suffix(cell: Option<(isize, isize)>) -> String {
    match cell {
        Some((i, j)) => format!(" at cell (i = {i}, j = {j})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a grid location to a conversion failure.
    pub fn at_cell(self, i: isize, j: isize) -> Self {
        match self {
            Error::NonPhysical { rho, p, .. } => Error::NonPhysical {
                rho,
                p,
                cell: Some((i, j)),
            },
            other => other,
        }
    }

    /// True for failures that come from the flow itself (positivity loss or
    /// NaN), as opposed to bad input.
    pub fn is_runtime_failure(&self) -> bool {
        matches!(self, Error::NonPhysical { .. } | Error::NonFinite { .. })
    }
}
