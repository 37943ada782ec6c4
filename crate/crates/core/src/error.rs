use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus polynomial is reducible over GF(p)")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("Gram matrices of the two column sets differ")]
    GramMismatch,
    #[error("column set is rank deficient")]
    RankDeficient,
    #[error("vectors have incompatible form values")]
    IncompatibleValues,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("form is anisotropic (Witt index 0)")]
    Anisotropic,
    #[error("pair of vertices is not an arc")]
    NotAnArc,
    #[error("no common neighbor exists")]
    NoWitness,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(&'static str),
    #[error("bad parity: {0}")]
    BadParity(&'static str),
    #[error("valency is zero")]
    ZeroValency,
    #[error("numeric oracle produced a non-integer eigenvalue {0}")]
    NonIntegerEigenvalue(f64),
    #[error("Witt index is too small for an ovoid")]
    WittIndexTooSmall,
    #[error("point is not on the quadric")]
    NotOnQuadric,
    #[error("points {0} and {1} are perpendicular")]
    PerpendicularPair(usize, usize),
    #[error("field does not satisfy the construction's constraints: {0}")]
    BadFieldForConstruction(&'static str),
    #[error("no pivot point with the required nonzero coordinate")]
    NoPivot,
    #[error("verification failed: {0}")]
    VerificationFailed(&'static str),
    #[error("odd dimension has no anti-Lorentz matrix")]
    OddDimension,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("matrix is neither Lorentz nor anti-Lorentz")]
    NotIsometry,
    #[error("factorization failed: some vector has zero or multiple decompositions")]
    FactorizationFailed,
    #[error("parameters out of scope: {0}")]
    OutOfScopeParameters(&'static str),
    #[error("unknown named form {0:?}")]
    UnknownForm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
