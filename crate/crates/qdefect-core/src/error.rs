use alloc::string::String;

use crate::f2::BitVector;

pub type Result<T> = core::result::Result<T, Error>;

/// Which half of a CSS code an operator or check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Z,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Side::X => f.write_str("X"),
            Side::Z => f.write_str("Z"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("row {index} out of range ({len} rows)")]
    RowOutOfRange { index: usize, len: usize },

    #[error("column {index} out of range ({len} columns)")]
    ColumnOutOfRange { index: usize, len: usize },

    /// An X check and a Z check overlap on an odd number of qubits.
    #[error("X row {x_row} and Z row {z_row} anticommute")]
    NotOrthogonal { x_row: usize, z_row: usize },

    /// An exhaustive enumeration would need more steps than allowed.
    #[error("enumeration needs 2^{needed_log2} steps, budget allows {budget}")]
    BudgetExceeded { needed_log2: u32, budget: u64 },

    /// A linear system over GF(2) has no solution.
    #[error("linear system is inconsistent")]
    Inconsistent,

    /// The region carries a logical operator, so it cannot be erased.
    /// The witness is a logical representative supported on the region.
    #[error("region not erasable: a {side} logical operator is supported on it")]
    NotErasable { side: Side, witness: BitVector },

    /// The promoted generator's class has no representative avoiding the
    /// removed region, so no new logical pair is created there.
    #[error("promoted row has no representative supported outside the removed region")]
    NoSupportedRepresentative,

    /// A defect-construction precondition failed; `reason` says which.
    #[error("defect condition failed: {reason}")]
    ConditionFailed { reason: String },

    /// A named precondition of a verifier failed.
    #[error("precondition `{name}` failed: {detail}")]
    PreconditionFailed { name: &'static str, detail: String },

    /// A requested random matrix ensemble is unsatisfiable.
    #[error("infeasible matrix spec: {0}")]
    InfeasibleSpec(String),
}
