use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank d={d} is too small (need d >= 3)")]
    RankTooSmall { d: usize },

    #[error("window has {found} entries, expected 2d = {expected}")]
    WindowLength { expected: usize, found: usize },

    #[error("residue cover violated at position {index}: residue already taken")]
    ResidueCover { index: usize },

    #[error("symmetry violated at position {index}: w({index}) + w({partner}) != {target}")]
    Symmetry { index: usize, partner: usize, target: i64 },

    #[error("parity violated: N0 + Nd = {count} is odd")]
    Parity { count: i64 },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rho is a length-zero generator and has no descents")]
    RhoHasNoDescent,

    #[error("generator index {index} out of range for d={d}")]
    GeneratorIndex { index: usize, d: usize },

    #[error("composition length n={n} must be even and positive")]
    CompositionLength { n: usize },

    #[error("composition {0} is not palindromic")]
    NotPalindromic(String),

    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("table invariant violated: {0}")]
    InvalidTable(String),

    #[error("conflicting entries for the same pair during merge")]
    MergeConflict,

    #[error("interval below an element of length {length} exceeds the configured bound {bound}")]
    IntervalTooLarge { length: usize, bound: usize },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
