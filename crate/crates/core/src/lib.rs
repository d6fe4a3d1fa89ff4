//! The mod 2 Leibniz-Hopf algebra `F`, its graded dual `F*`, and the mod 2
//! Steenrod algebra and its dual sitting inside them.
//!
//! * [`composition`]: compositions, orders, coarsenings, the `+`/`,` duality.
//! * [`linear`]: GF(2) sums, tensor sums, pairing, bit-packed elimination.
//! * [`leibniz`]: concatenation, the coproduct of `F`, Adem reduction, the
//!   antipode of `F`.
//! * [`dual`]: the overlapping shuffle product, deconcatenation, and two
//!   formulas for the antipode of `F*`.
//! * [`steenrod`]: Milnor generators inside `F*`, the left inverse `r`, and
//!   the triangular tables giving Adem coefficients and Milnor expansions.
//! * [`verify`]: exhaustive checks of the Hopf axioms and the duality theorem.
//! * [`expr`]: text syntax for sums, e.g. `S_[2,4] + S_[6]`.

pub mod cli;
pub mod composition;
mod context;
pub mod dual;
pub mod error;
pub mod expr;
pub mod leibniz;
pub mod linear;
pub mod steenrod;
pub mod verify;

pub use composition::{BlockPartition, Composition, ExponentVector, DEFAULT_DEGREE_CAP};
pub use context::Context;
pub use error::{Error, Result};
pub use linear::{pairing, Basis, F2Sum, TensorSum};
