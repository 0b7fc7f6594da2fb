use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible")]
    NotIrreducible(Vec<u64>),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("zero element has no discrete logarithm or quadratic character")]
    ZeroElement,
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("no character of order {ell} on a field of order {order}")]
    OrderMismatch { ell: u64, order: u64 },
    #[error("index {0} outside 1..=ell")]
    IndexOutOfRange(u64),
    #[error("{ell} divides q = {q}")]
    Divisible { ell: u64, q: u64 },
    #[error("discriminant a^2 - 4b is zero: the function field has genus 0")]
    GenusZero,
    #[error("Newton recursion produced a non-integral c_{0}")]
    NonIntegralCoefficient(usize),
    #[error("no closed form for m = {m} (ell = {ell})")]
    UnsupportedM { ell: u64, m: u64 },
    #[error("closed-form averages exist only for ell = 5 and 7, not {0}")]
    UnsupportedEll(u64),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("right-hand side of the diagonal equation must be nonzero")]
    ZeroRhs,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
