use thiserror::Error;

/// Errors surfaced by the engine. Verdicts such as "undetermined" are not
/// errors; they are ordinary results with their own payload.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^16 bound on the prime")]
    PrimeTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra is not finite dimensional: paths of length {length_cap} survive the relations")]
    NotFiniteDimensional { length_cap: usize },
    #[error("quiver index out of range: {0}")]
    BadQuiver(String),
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("not a valid module map: {0}")]
    NotAModuleMap(String),
    #[error("representation violates a relation of the algebra (relation {relation})")]
    NotARepresentation { relation: usize },
    #[error("differentials do not square to zero at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("chain map does not commute with differentials at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("operation requires a commutative algebra")]
    NotCommutative,
    #[error("module carries no valid Ding projective certificate")]
    NotDingProjective,
    #[error("comparison map is not bijective at degree {degree} >= threshold {threshold}")]
    ThresholdViolated { degree: i64, threshold: i64 },
    #[error("chain map extension obstructed at degree {degree}; the acyclicity certificate is inconsistent")]
    ExtensionObstructed { degree: i64 },
    #[error("isomorphism test undetermined: hom space of dimension {hom_dim} too large to enumerate")]
    IsoUndetermined { hom_dim: usize },
    #[error("no linear solution exists")]
    NoSolution,
    #[error("window must be at least {0} for this operation")]
    WindowTooSmall(i64),
    #[error("hypothesis failed: the complex does not have finite Ding projective dimension")]
    FailedHypothesis,
    #[error("certificate replay failed: {0}")]
    CertificateReplay(String),
    #[error("input document invalid: {0}")]
    BadDocument(String),
    #[error("computation exceeds the engine's desk-scale bounds: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
