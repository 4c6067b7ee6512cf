// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate {name} does not accept arity {arity}")]
    ArityMismatch { name: String, arity: usize },
    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("permutation table for {name} has {actual} entries, expected {expected}")]
    BadTable {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error("line {line} is out of range for a circuit of {num_lines} lines")]
    LineOutOfRange { line: usize, num_lines: usize },
    #[error("line {0} appears more than once in one gate")]
    DuplicateLine(usize),
    #[error("a circuit needs at least one line")]
    NoLines,
    #[error("no quantum cost entry for {0}")]
    MissingCost(String),
    #[error("{lines} lines exceed the exhaustive limit of {limit}")]
    TooManyLines { lines: usize, limit: usize },
    #[error("line {line} is constant {expected} but the input drives {actual}")]
    ConstantViolation {
        line: usize,
        expected: bool,
        actual: bool,
    },
    #[error("line map is not injective: target line {0} used twice")]
    NonInjectiveMap(usize),
    #[error("line {0} of the second circuit is neither mapped nor constant")]
    UnmappedFreeLine(usize),
    #[error("gate {0} is not bijective")]
    NotBijective(String),
    #[error("cannot transform an empty circuit")]
    EmptyCircuit,
    #[error("checker needs {expected} constant-one lines, got {actual}")]
    CheckerShape { expected: usize, actual: usize },
    #[error("fault site (block {block}, wire {wire}) does not exist")]
    InvalidSite { block: usize, wire: usize },
    #[error("double-fault probe needs two distinct wires of the same block")]
    InvalidProbe,
    #[error("circuit does not carry testable-block provenance: {0}")]
    MissingProvenance(String),
    #[error("sampled campaigns need at least one sample")]
    NoSamples,
    #[error("{0}")]
    Real(#[from] RealError),
    #[error("missing benchmark fixture `{0}`")]
    MissingFixture(String),
    #[error("{0}")]
    Io(String),
}

/// Errors raised while reading or writing `.real` netlists.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown gate token `{token}`")]
    UnknownToken { line: usize, token: String },
    #[error("line {line}: undeclared variable `{name}`")]
    UndeclaredVariable { line: usize, name: String },
    #[error("line {line}: variable `{name}` used twice in one gate")]
    DuplicateVariable { line: usize, name: String },
    #[error("`.{directive}` lists {actual} entries but .numvars is {expected}")]
    CountMismatch {
        directive: String,
        expected: usize,
        actual: usize,
    },
    #[error("no .real token for gate {0}")]
    Unmappable(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
