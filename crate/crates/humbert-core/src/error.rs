use thiserror::Error;

/// Errors shared by every module. The `kind` string is part of the CLI's
/// machine-readable output contract and must stay stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate value: {0}")]
    DegenerateValue(String),
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("degenerate triple: repeated anchor point")]
    DegenerateTriple,
    #[error("evaluation hit a pole")]
    PoleAt,
    #[error("evaluation is indeterminate (0/0)")]
    Indeterminate,
    #[error("parameter pair is not in the Torelli space: {0}")]
    NotInTorelli(String),
    #[error("no order-two symmetry: no orbit element has the form (l, 1/l)")]
    NoZ2Symmetry,
    #[error("element set is not a group: {0}")]
    NotAGroup(String),
    #[error("computed map set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("root selector does not isolate a single root: {0}")]
    AmbiguousRoot(String),
    #[error("approximate values too close to separate reliably: {0}")]
    PrecisionWarning(String),
    #[error("fixture error: {0}")]
    FixtureError(String),
    #[error("square root does not exist in the exact field")]
    SqrtNotExact,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag for JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateValue(_) => "DegenerateValue",
            Error::DegenerateMap(_) => "DegenerateMap",
            Error::DegenerateTriple => "DegenerateTriple",
            Error::PoleAt => "PoleAt",
            Error::Indeterminate => "Indeterminate",
            Error::NotInTorelli(_) => "NotInTorelli",
            Error::NoZ2Symmetry => "NoZ2Symmetry",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::AmbiguousRoot(_) => "AmbiguousRoot",
            Error::PrecisionWarning(_) => "PrecisionWarning",
            Error::FixtureError(_) => "FixtureError",
            Error::SqrtNotExact => "SqrtNotExact",
            Error::Parse(_) => "ParseError",
            Error::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
