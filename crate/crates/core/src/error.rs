use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd({a}, {b}) = {gcd}, expected coprime arguments")]
    NonCoprime { a: i64, b: i64, gcd: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("continued fraction {0:?} has a vanishing intermediate denominator")]
    DegenerateFraction(Vec<i64>),

    #[error("order {0} is even; the first Chern class labeling needs odd order")]
    EvenOrder(u64),

    #[error("relabeled correction table of L({p}, {q}) violates d(i) = d(-i) at i = {i}")]
    SymmetryFailure { p: u64, q: u64, i: u64 },

    #[error("index {index} is outside [0, {bound})")]
    OutOfRange { index: u64, bound: u64 },

    #[error("{u} is not a unit modulo {p}")]
    NonUnit { u: u64, p: u64 },

    #[error("tables have different orders ({0} and {1})")]
    MismatchedOrder(u64, u64),

    #[error("summand S({p}, {q}) is the unknot")]
    TrivialSummand { p: u64, q: u64 },
}

impl Error {
    /// True for errors that can only come from an implementation fault.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SymmetryFailure { .. })
    }
}
