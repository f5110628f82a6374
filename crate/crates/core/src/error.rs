use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed user input: bad permutations, inconsistent Cayley tables,
    /// matrix actions that do not respect the acting group.
    #[error("input error: {0}")]
    Input(String),

    /// An enumeration-based construction was asked to scan a group larger
    /// than the configured bound.
    #[error("capacity error: group of order {order} exceeds enumeration bound {bound}")]
    Capacity { order: u64, bound: u64 },

    /// The operation is not defined for its arguments (non-normal kernel,
    /// Frattini of a non-p-group, table mismatch, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid automorphism: residue {residue} is not a unit modulo {modulus}")]
    InvalidAutomorphism { residue: u64, modulus: u64 },

    /// An internal consistency assertion failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
