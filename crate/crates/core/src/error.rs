use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected} levels, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid bit value {0}; levels must be 0 or 1")]
    InvalidBit(u8),

    #[error("singular configuration: n1 = n2 leaves no gain difference to align on")]
    Singular,

    #[error("enumeration needs {required} bits (2^{required} states), budget is {budget} bits")]
    BudgetExceeded { required: u32, budget: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
