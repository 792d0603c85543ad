use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("index {index} out of range for N={rank}, n={len}")]
    IndexOutOfRange { rank: u32, len: usize, index: u64 },
    #[error("letter {letter} not in 1..{rank}")]
    BadLetter { rank: u32, letter: u32 },
    #[error("invalid rank {0}")]
    BadRank(u32),
    #[error("split point {0} out of range for a word of length {1}")]
    SplitOutOfRange(usize, usize),
    #[error("enumeration of {size} items exceeds the guard {guard}")]
    EnumerationTooLarge { size: u128, guard: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("empty subalphabet")]
    EmptySubalphabet,
    #[error("subalphabet must be strictly increasing within 1..{0}")]
    BadSubalphabet(u32),
    #[error("generator index {0} out of range for {1} strands")]
    GeneratorOutOfRange(i64, usize),
    #[error("T⊗T does not commute with R")]
    CommutationHypothesis,
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("no diagonal witness: {0}")]
    NoDiagonalWitness(String),
    #[error("eigenvalues account for {found} of {dim} dimensions")]
    EigenvaluesIncomplete { found: usize, dim: usize },
    #[error("field precondition violated: {0}")]
    FieldPrecondition(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("primes {0} and {1} disagree on {2}")]
    BadPrime(u64, u64, String),
    #[error("denominator vanishes mod {0}")]
    DenominatorVanishes(u64),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("unknown parameter: {0}")]
    UnknownParameter(String),
    #[error("constraint violated: {0} vanishes")]
    ConstraintViolated(String),
    #[error("retry budget exhausted after {0} attempts")]
    RetryBudgetExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
