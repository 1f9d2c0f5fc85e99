use thiserror::Error;

/// Errors produced by the algebraic layers, the cipher, and the key/codec tooling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} out of range (need 2 <= n <= 2^31)")]
    ModulusOutOfRange(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("modulus {n} too large for this check (limit {limit})")]
    ModulusTooLarge { n: u64, limit: u64 },

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("operations are not orthogonal: determinant {det} is not a unit modulo {modulus}")]
    NotOrthogonal { det: u64, modulus: u64 },

    #[error("orthogonality to the identity parastrophe is never satisfied")]
    SelfParastrophe,

    #[error("value {value} is not a canonical residue modulo {modulus}")]
    SymbolOutOfRange { value: u64, modulus: u64 },

    #[error("stream length {0} is odd; pair cipher needs even length")]
    OddLength(usize),

    #[error("translation power must be >= 1")]
    ZeroPower,

    #[error("key schedule has no steps")]
    EmptySchedule,

    #[error("key is not in the expected mode for this operation")]
    WrongMode,

    #[error("markovski mode needs one step, one quasigroup, left translations, powers 1")]
    MarkovskiShape,

    #[error("cannot satisfy key generation constraints: {0}")]
    InfeasibleConstraints(String),

    #[error("invalid key file: {0}")]
    KeyFile(String),

    #[error("codec error: {0}")]
    Codec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
