use thiserror::Error;

/// Errors raised by the algebra and decomposition routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus degree {found} does not match extension degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("field of size {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("no squarefree specialization found within F_(q^{0})")]
    NoGoodSpecialization(usize),
    #[error("polynomial is inseparable")]
    Inseparable,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("both operators are zero")]
    BothZero,
    #[error("zero operator")]
    ZeroOperator,
    #[error("operator is not central")]
    NotCentral,
    #[error("operator does not right-divide")]
    NotDivisible,
    #[error("operator has order zero")]
    ZeroOrder,
    #[error("value expected in F_q(t^p) is not: {0}")]
    ConstantFieldViolation(String),
    #[error("not a p-th power")]
    NotAPthPower,
    #[error("characteristic polynomial has an inseparable irreducible factor {0}")]
    InseparableFactor(String),
    #[error("central symbol of factor {0} is irreducible")]
    CentralIrreducibleFactor(String),
    #[error("invariant request is empty")]
    EmptyRequest,
    #[error("invariant request is malformed: {0}")]
    BadRequest(String),
    #[error("operator orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("isomorphism witness is not coprime to the operator")]
    NotCoprime,
    #[error("empty hom-space basis")]
    EmptyBasis,
    #[error("no isomorphism found after {0} samples")]
    RetryExhausted(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
