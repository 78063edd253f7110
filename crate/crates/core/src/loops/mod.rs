//! The unit loop M(q), the Paige loop M*(q), and the involution combinatorics
//! of M*(2).

pub mod named;
mod subgroups;
mod table;

use thiserror::Error;

pub use subgroups::{GroupKind, PairKind, S3Report, Subgroup};
pub use table::{enumerate_loop, LoopKind, LoopTable};

use crate::zorn::ZornError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error(transparent)]
    Algebra(#[from] ZornError),
    #[error("index {index} out of range for a loop of {len} elements")]
    IndexOutOfRange { index: u32, len: u32 },
    #[error("element {0} is not an involution")]
    NotInvolution(u32),
    #[error("expected two distinct elements, got {0} twice")]
    EqualArguments(u32),
    #[error("this operation is only defined over GF(2)")]
    RequiresQ2,
}
