use thiserror::Error;

/// What went wrong while reading an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unknown node kind `{0}`")]
    UnknownNodeKind(String),
    #[error("duplicate node id {0}")]
    DuplicateNodeId(usize),
    #[error("no depot node")]
    NoDepot,
    #[error("more than one depot node")]
    MultipleDepots,
    #[error("customer {id} demand exceeds cargo capacity")]
    DemandExceedsCapacity { id: usize },
    #[error("non-numeric field `{0}`")]
    NonNumericField(String),
    #[error("invalid node: {0}")]
    InvalidNode(String),
}

/// A parse failure tied to the 1-based line that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("node id {0} is out of range")]
    InvalidNodeId(usize),
    #[error("at least one customer is required")]
    ZeroCustomers,
    #[error("genome is not a permutation of the instance customers: {0}")]
    InvalidGenome(String),
    #[error("parents are not permutations of the same customer set")]
    MismatchedCustomerSets,
    #[error("index {index} out of range for genome of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("population size must be at least 1")]
    PopulationTooSmall,
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("ant colony needs at least one iteration")]
    MinimumOneIteration,
    #[error("{count} customers exceeds the brute-force limit of {limit}")]
    TooManyCustomers { count: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
