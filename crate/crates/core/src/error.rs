use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 65536)")]
    PrimeTooLarge(u64),
    #[error("invalid field degree: {0}")]
    InvalidDegree(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tower mismatch: expected {expected} coordinates, found {found}")]
    TowerMismatch { expected: usize, found: usize },
    #[error("modulus does not match the canonical modulus for this tower")]
    ModulusMismatch,
    #[error("the zero Ore polynomial has no finite kernel")]
    ZeroPolynomial,
    #[error("element is not in the subfield F_q")]
    NotInSubfield,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("characteristic meets divisor")]
    CharacteristicMeetsDivisor,
    #[error("ambient too small: {0}")]
    AmbientTooSmall(String),
    #[error("singular A")]
    SingularA,
    #[error("singular D-part")]
    SingularDPart,
    #[error("invalid level data: {0}")]
    InvalidLevelData(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group element is not invertible: {0}")]
    NotInvertible(String),
    #[error("rank must be 1, got {0}")]
    RankNotOne(usize),
    #[error("group too large: {order} elements exceeds cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("no sufficient extension degree up to cap {0}")]
    CapExceeded(usize),
}
