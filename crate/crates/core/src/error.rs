use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
///
/// Variants are grouped by the subsystem that raises them; the `Display`
/// impl prefixes a module-qualified code so CLI diagnostics stay greppable.
#[derive(Debug, Error)]
pub enum Error {
    #[error("fields:DivisionByZero: division by zero element")]
    DivisionByZero,
    #[error("fields:FieldMismatch: {0}")]
    FieldMismatch(String),
    #[error("fields:DegreeOverflow: compositum degree {got} exceeds limit {limit}")]
    DegreeOverflow { got: usize, limit: usize },
    #[error("fields:Reducible: defining polynomial has factor {0}")]
    Reducible(String),
    #[error("fields:InvalidPolynomial: {0}")]
    InvalidPolynomial(String),

    #[error("chars:NotMultiplicative: value table is not completely multiplicative ({0})")]
    NotMultiplicative(String),
    #[error("chars:InvalidTable: {0}")]
    InvalidTable(String),

    #[error("qseries:MetaMismatch: {0}")]
    MetaMismatch(String),
    #[error("qseries:PrecisionExceeded: coefficient {index} requested but precision is {precision}")]
    PrecisionExceeded { index: u64, precision: u64 },

    #[error("theta:NotPrimitiveOdd: {0}")]
    NotPrimitiveOdd(String),

    #[error("hecke:PrecisionTooLow: need precision >= {needed}, have {have}")]
    PrecisionTooLow { needed: u64, have: u64 },
    #[error("hecke:NotInSpan: {0}")]
    NotInSpan(String),

    #[error("lift:TNotSquarefree: t = {0} is not square-free")]
    TNotSquarefree(u64),
    #[error("lift:MissingEigenvalue: no eigenvalue supplied for p = {0}")]
    MissingEigenvalue(u64),
    #[error("lift:ZeroLeadingCoefficient: a_t = 0 for t = {0}")]
    ZeroLeadingCoefficient(u64),

    #[error("newforms:SchemaError: {0}")]
    SchemaError(String),
    #[error("newforms:InvariantViolation: packet {label}: {detail}")]
    InvariantViolation { label: String, detail: String },
    #[error("newforms:UnsupportedDegree: orbit {label} has degree {degree} > 2 and no explicit embeddings")]
    UnsupportedDegree { label: String, degree: usize },
    #[error("newforms:CannotDistinguish: packets not separated by primes up to {0}")]
    CannotDistinguish(u64),
    #[error("newforms:NetworkError: {0}")]
    NetworkError(String),
    #[error("newforms:UpstreamSchemaChanged: {0}")]
    UpstreamSchemaChanged(String),
    #[error("newforms:CacheCorrupt: {0}")]
    CacheCorrupt(String),

    #[error("decomp:IncompleteCover: {0}")]
    IncompleteCover(String),
    #[error("decomp:PacketFieldIncompatible: {0}")]
    PacketFieldIncompatible(String),
    #[error("decomp:MissingClaims: {0}")]
    MissingClaims(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
