use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue degree {degree} is not supported (allowed 1..={max})")]
    UnsupportedDegree { degree: usize, max: usize },
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("operands belong to different fields")]
    ParamMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("invalid digit system: {0}")]
    InvalidDigitSystem(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not integral (negative valuation)")]
    NotIntegral,

    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { symbol: String, position: usize },
    #[error("digit index {digit} at position {position} is a hole of the encoding")]
    HoleDigit { digit: usize, position: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid encoding map: {0}")]
    InvalidEncoding(String),
    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedFasta { line: usize, reason: String },

    #[error("points {0:?} and {1:?} agree in every digit within precision")]
    IndistinguishablePoints(String, String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("a vertex has {branching} children but the residue field has only {q} elements")]
    BranchingExceedsQ { branching: usize, q: u64 },

    #[error("transformation is degenerate within precision")]
    DegenerateTransform,
    #[error("triple is degenerate: two of its points coincide")]
    DegenerateTriple,
    #[error("punctures {0:?} and {1:?} collide within precision")]
    CollisionDetected(String, String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("edge {0} is not an interior edge")]
    NotInteriorEdge(usize),

    #[error("|c| must be < 1 for a Tate quotient")]
    NotInUnitBall,
    #[error("parameter vanishes within precision")]
    ZeroParameter,
    #[error("lambda must avoid 0 and 1 within precision")]
    DegenerateLambda,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
