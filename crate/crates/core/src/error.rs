use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed group spec: {0}")]
    BadSpec(String),
    #[error("group order exceeds cap {cap} (reached {reached})")]
    CapExceeded { cap: usize, reached: usize },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("quaternionic irreducible (index {0}) is not supported")]
    Quaternionic(usize),
    #[error("non-integral value {value} in {context}")]
    NonIntegral { context: String, value: f64 },
    #[error("circle discretization did not stabilize: {0}")]
    Unstable(String),
    #[error("winding number failed: {0}")]
    Winding(String),
    #[error("isolation window not found: {0}")]
    Isolation(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bracketing failed for J_{order}, zero #{index}")]
    Bracketing { order: usize, index: usize },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag, stable across versions.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadSpec(_) => "bad-spec",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::UnknownClass(_) => "unknown-class",
            Error::NotHomomorphism(_) => "not-homomorphism",
            Error::Quaternionic(_) => "quaternionic",
            Error::NonIntegral { .. } => "non-integral",
            Error::Unstable(_) => "unstable-discretization",
            Error::Winding(_) => "winding",
            Error::Isolation(_) => "isolation",
            Error::Missing(_) => "missing",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Bracketing { .. } => "bracketing",
            Error::Parse(_) => "parse",
            Error::Numerical(_) => "numerical",
        }
    }
}

/// Round `x` to an integer if it lies within `tol`, else report.
pub fn round_exact(x: f64, tol: f64, context: &str) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() <= tol {
        Ok(r as i64)
    } else {
        Err(Error::NonIntegral {
            context: context.to_string(),
            value: x,
        })
    }
}
