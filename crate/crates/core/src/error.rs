use thiserror::Error;

/// Why a single polynomial line was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `y_{{K}} =` prefix")]
    MissingPrefix,
    #[error("malformed term `{0}`")]
    MalformedTerm(String),
    #[error("variable index {0} outside 1..=64")]
    VariableOutOfRange(u64),
    #[error("variable x_{{{0}}} repeated within one term")]
    RepeatedVariable(u8),
    #[error("term `{0}` has degree {1}, at most 2 is allowed")]
    DegreeTooHigh(String, usize),
    #[error("duplicate term `{0}`")]
    DuplicateTerm(String),
    #[error("empty right-hand side")]
    EmptyPolynomial,
}

/// Parse failure with the 1-based character column where the offending token starts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("expected 32 polynomials, found {0}")]
    WrongPolynomialCount(usize),
    #[error("polynomial index out of order: expected y_{{{expected}}}, found y_{{{found}}}")]
    IndexOutOfOrder { expected: u32, found: u32 },
    #[error("message length does not fit in 64 bits")]
    MessageTooLong,
    #[error("padded length {0} bytes is not a positive multiple of 56")]
    BadPaddedLength(usize),
    #[error("last-block word M_15 is undefined under the literal word map")]
    UndefinedLastBlockWord,
    #[error("unsupported round count {0}, expected 32, 48 or 64")]
    InvalidRounds(u32),
    #[error("expected a {expected}-byte input, got {found} bytes")]
    InvalidInputLength { expected: usize, found: usize },
    #[error("invalid digest text: {0}")]
    InvalidDigest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
