use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1")]
    EmptyTournament,
    #[error("matrix shape mismatch: expected {expected}x{expected}, found {found}")]
    Shape { expected: usize, found: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("missing orientation ({0},{1})")]
    MissingOrientation(usize, usize),
    #[error("double orientation ({0},{1})")]
    DoubleOrientation(usize, usize),
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("instance code out of range for n={n}")]
    CodeOutOfRange { n: usize },
    #[error("tournament sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot restrict to an empty vertex set")]
    EmptyRestriction,
    #[error("rotational tournaments need odd n, got {0}")]
    EvenRotational(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("requested {requested} rounds but the schedule has {len}")]
    RoundsExceeded { requested: usize, len: usize },
    #[error("n={n} exceeds the exhaustive limit of {limit}")]
    AboveGate { n: usize, limit: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
