use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{dividend} is not divisible by {divisor} in Z[v, v^-1]")]
    NonDivisible { dividend: String, divisor: String },

    #[error("normalized binomial ({a} over {n}) has an odd power of v")]
    ShiftNotEven { a: i64, n: i64 },

    #[error("evaluation at zero of a polynomial with negative exponents")]
    ZeroBase,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid complex type: {0}")]
    InvalidComplexType(String),

    #[error("deformation index {k:?} is not bounded by r = {r:?}")]
    DeformationOutOfRange { k: Vec<u32>, r: Vec<u32> },

    #[error("Omega = {0:?} is not sparse")]
    NotSparse(Vec<usize>),

    #[error("negative multiplicity for segment [{0}..{1}] (inconsistent rank data)")]
    NegativeMultiplicity(usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("interpolated values are not given by an integer polynomial ({0})")]
    NonIntegerInterpolation(String),

    #[error("interpolated polynomial disagrees with a fresh count at p = {prime} ({detail})")]
    ExtraPrimeMismatch { prime: u32, detail: String },

    #[error("PBW word for {0} does not evaluate to its PBW basis element")]
    OrderConventionViolation(String),

    #[error("bar matrix is not unitriangular: {0}")]
    NotUnitriangular(String),

    #[error("canonical-basis recursion has no solution in the lattice: {0}")]
    NoSolutionInLattice(String),

    #[error("odd power of v present in {0}")]
    OddPowerPresent(String),

    #[error("negative power of v present in {0}")]
    NegativePowerPresent(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("({dim:?}, r = {r:?}) is not an irreducible component")]
    NotAComponent { dim: Vec<u32>, r: Vec<u32> },

    #[error("total dimension {total} exceeds the ceiling {ceiling}")]
    CeilingExceeded { total: u32, ceiling: u32 },

    #[error("cache: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Errors that can only fire if the implementation itself is inconsistent.
    pub fn is_internal_trap(&self) -> bool {
        matches!(
            self,
            Error::NonDivisible { .. }
                | Error::ShiftNotEven { .. }
                | Error::NegativeMultiplicity(..)
                | Error::NonIntegerInterpolation(_)
                | Error::ExtraPrimeMismatch { .. }
                | Error::OrderConventionViolation(_)
                | Error::NotUnitriangular(_)
                | Error::NoSolutionInLattice(_)
                | Error::OddPowerPresent(_)
                | Error::NegativePowerPresent(_)
        )
    }
}
