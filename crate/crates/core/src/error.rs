use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },

    #[error("singular generator tau{index} carries non-positive exponent {exponent}")]
    NegativeSingularExponent { index: usize, exponent: i64 },

    #[error("framing vector has {got} entries, expected {expected}")]
    FramingLength { expected: usize, got: usize },

    #[error("subset D must be non-empty")]
    EmptySubset,

    #[error("residue {residue} is not in Z/{d}")]
    ResidueOutOfRange { residue: u32, d: u32 },

    #[error("parameter d must be positive")]
    ZeroConductor,

    #[error("E-system verification failed for d={d} at equation m={m}")]
    ESystemVerification { d: u32, m: u32 },

    #[error("basis of Y({d},{n}) has more than {limit} elements")]
    BasisTooLarge { d: u32, n: usize, limit: u64 },

    #[error("cannot substitute for variable {0}")]
    Substitution(String),

    #[error("values with different square-root parity cannot be added")]
    ParityMismatch,

    #[error("values carry different parameters")]
    ParamMismatch,

    #[error("operation needs a specialized parameter E_D")]
    MissingE,

    #[error("operation not supported for invariant kind {0}")]
    UnsupportedKind(String),

    #[error("words do not form a split link: {0}")]
    MalformedSplit(String),

    #[error("square root of lambda has no series branch at h = 0")]
    SeriesBranch,

    #[error("property violated: {0}")]
    PropertyViolation(String),

    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Ingest { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
