use thiserror::Error;

use crate::composition::Composition;
use crate::linear::Basis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composition entries must be positive, got {0:?}")]
    ZeroEntry(Vec<u32>),

    #[error("{0} is not admissible")]
    NotAdmissible(Composition),

    #[error("({0},{1}) is already admissible; no Adem relation applies")]
    AdmissiblePair(u32, u32),

    #[error("degree {degree} exceeds the configured cap of {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("expected a nonempty composition")]
    EmptyComposition,

    #[error("xi index must be at least 1")]
    XiIndexZero,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: Basis, right: Basis },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("triangularity violated in degree {degree} at {row}: {detail}")]
    Triangularity {
        degree: u32,
        row: Composition,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
