use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("tensor carriers do not match: {0:?} vs {1:?}")]
    CarrierMismatch(Vec<String>, Vec<String>),

    #[error("PBW straightening exceeded degree bound {0}")]
    StraighteningBound(u32),

    #[error("Lie algebra data invalid: {0}")]
    InvalidLieAlgebra(String),

    #[error("bialgebra `{0}` is not cocommutative")]
    NotCocommutative(String),

    #[error("carrier has no coalgebra data")]
    MissingCoalgebra,

    #[error("neither factor is declared commutative")]
    NoCommutativity,

    #[error("gauge map is not invertible at the current truncation: {0}")]
    NonInvertibleGauge(String),

    #[error("invalid group law: {0}")]
    InvalidGroup(String),

    #[error("function leaves the carrier class: {0}")]
    CarrierViolation(String),

    #[error("first-order term is not a bivector: {0}")]
    NotBidifferential(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("cocycle is not exact: {0}")]
    NotExact(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("invalid positive system: {0}")]
    InvalidPositiveSystem(String),

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
