use thiserror::Error;

/// Errors raised by the library.
///
/// Rational values inside variants are pre-rendered as `a/b` strings so the
/// error type stays independent of the scalar in use.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("sample space must contain at least one element")]
    EmptySpace,

    #[error("label at position {0} is empty")]
    EmptyLabel(usize),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("element index {index} out of range for a space of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("sample space has {size} elements, above the limit of {limit}")]
    SpaceTooLarge { size: usize, limit: usize },

    #[error("operands belong to different sample spaces")]
    SpaceMismatch,

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("mass {mass} of {set} is outside [0, 1]")]
    MassOutOfRange { set: String, mass: String },

    #[error("mass of the full space is {0}, expected 1")]
    FullSpaceMassNotOne(String),

    #[error("oracle guard exceeded: more than {limit} sets in the generated field")]
    OracleGuardExceeded { limit: usize },

    #[error("field enumeration guard exceeded: {atoms} atoms, bound is {bound}")]
    FieldGuardExceeded { atoms: usize, bound: usize },

    #[error("set {0} is not measurable")]
    NotMeasurable(String),

    #[error("measure assignment inconsistent: {witness}")]
    Inconsistent { witness: String },

    #[error("measure underdetermined: atoms {atoms:?} are unconstrained")]
    Underdetermined { atoms: Vec<usize> },

    #[error("negative atom mass: atom {atom} would receive {mass}")]
    NegativeAtomMass { atom: usize, mass: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid atom masses: {0}")]
    InvalidAtomMasses(String),

    #[error("invalid p.m.f.: {0}")]
    InvalidPmf(String),

    #[error("conditional p.m.f. for atom {atom}: {reason}")]
    InvalidConditional { atom: usize, reason: String },

    #[error("atom index {index} out of range ({count} atoms)")]
    AtomOutOfRange { index: usize, count: usize },

    #[error("tail undefined for finite atom {0}")]
    TailUndefinedForFiniteAtom(usize),

    #[error("indexer inconsistency at element {index}: {reason}")]
    IndexerInconsistent { index: u64, reason: String },

    #[error("element {0} does not belong to the presented sample space")]
    NotInPresentation(u64),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("distribution not supported on range of X: value {0:?} has positive mass but is never attained")]
    UnsupportedDistribution(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
