use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments outside an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Parameters outside the range where the closed form is proven.
    #[error("out of theorem domain: n={n}, k={k}, h={h} (requires 2 <= k <= n-1 and 0 <= h <= n-k)")]
    OutOfTheoremDomain { n: usize, k: usize, h: usize },
    /// A computed object failed a check the mathematics guarantees.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::OutOfTheoremDomain { .. } => "out-of-theorem-domain",
            Error::Inconsistent(_) => "internal-inconsistency",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(format!($($arg)*))
    };
}
pub(crate) use domain;
