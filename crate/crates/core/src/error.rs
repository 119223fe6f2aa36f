use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring parameters must be positive integers, got a = {a}, b = {b}")]
    InvalidParams { a: String, b: String },

    #[error("operands belong to different rings: LQ_{{{left}}} and LQ_{{{right}}}")]
    MixedRings { left: String, right: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{0} is not in the cube subgroup (imaginary coefficients must be divisible by 3)")]
    NotRepresentable(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid residues ({a6}, {b6}): both must lie in 0..=5")]
    InvalidResidues { a6: u8, b6: u8 },
}

pub type Result<T> = std::result::Result<T, Error>;
