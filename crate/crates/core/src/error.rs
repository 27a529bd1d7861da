use std::fmt;

use thiserror::Error;

/// Why a linear differential solve did not produce a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveFailure {
    /// The bounded search (polynomial degree or jet order) found nothing.
    /// This never claims that no solution exists.
    NoSolutionFoundAtBound(String),
    /// The system is contradictory independently of any search bound.
    ProvenInconsistent(String),
    /// A coefficient of the system has a pole at the expansion point.
    SingularPoint(String),
}

impl fmt::Display for SolveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveFailure::NoSolutionFoundAtBound(s) => write!(f, "no solution found at bound {s}"),
            SolveFailure::ProvenInconsistent(s) => write!(f, "proven inconsistent: {s}"),
            SolveFailure::SingularPoint(s) => write!(f, "singular point: {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("derivation index {index} out of range 1..={max}")]
    DerivationOutOfRange { index: usize, max: usize },
    #[error("index {index} out of range ({what})")]
    IndexOutOfRange { index: usize, what: &'static str },
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial has no indeterminates")]
    ConstantPolynomial,
    #[error("no value assigned to {0}")]
    MissingIndeterminate(String),
    #[error("set is not autoreduced: {offending} in `{g}` obstructs `{f}`")]
    NotAutoreduced { f: String, g: String, offending: String },
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("H vanishes under the coefficient map")]
    HVanishesUnderMap,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("algebra has no local decomposition")]
    NoDecomposition,
    #[error("element is not a unit: residue {0} vanishes")]
    NotAUnit(usize),
    #[error("structure constants given without idempotent hints")]
    IdempotentsRequired,
    #[error("invalid idempotents: {0}")]
    InvalidIdempotents(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("e(denominator) is not a unit: residue {0} vanishes")]
    DenominatorNotUnit(usize),
    #[error("element lies outside the domain of the structure: {0}")]
    NotInDomain(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("solver failed at level {level}, basis index {index}: {failure}")]
    SolverFailed { level: usize, index: usize, failure: SolveFailure },
    #[error("solver failed: {0}")]
    Solve(SolveFailure),
    #[error("f(b) is not in the filtration level {0}")]
    NotInFiltration(usize),
    #[error("H lies in the asserted ideal")]
    HInAssertedIdeal,
    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{context}: {source}")]
    InFactor { context: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn in_factor(self, factor: usize) -> Error {
        Error::InFactor { context: format!("local factor {factor}"), source: Box::new(self) }
    }

    /// Strips factor tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFactor { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
