//! Automorphisms of the octonion algebras and of their unit loops.
//!
//! Algebra automorphisms are [`LinearMap`]s on coordinates. Loop automorphisms
//! are index permutations over a [`LoopTable`](crate::LoopTable), composed
//! right to left. The extension pipeline recovers the linear map behind a loop
//! automorphism of M*(2) from the image of a fixed doubling triple.

mod constructions;
mod extend;
mod group;
mod linear;
mod perm;
mod triples;

use thiserror::Error;

pub use constructions::{
    diag_automorphism, diag_map, diagonal_switch, is_even, perm_automorphism,
    signed_perm_automorphism, switch_map, Matrix3, S3_PERMUTATIONS,
};
pub use extend::{extend_loop_automorphism, linear_extension_odd, standard_generators};
pub use group::{orbits_on_points, orbits_on_sets, PermGroup};
pub use linear::{rank, LinearMap};
pub use perm::{
    audit_all_pairs, audit_loop_automorphism, audit_sampled, conjugation, conjugation_unchecked,
    restrict, LoopAutomorphism, Permutation, Provenance,
};
pub use triples::{
    canonical_triple, doubling_triple_census, is_doubling_triple, multiplicative_triple_test,
    psi_extension, triple_basis, DoublingTriple,
};

use crate::loops::LoopError;
use crate::zorn::ZornError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Algebra(#[from] ZornError),
    #[error("norms of the `{0}` entries differ")]
    NormMismatch(&'static str),
    #[error("not a doubling triple: {0}")]
    NotDoublingTriple(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not preserve {property} at ({alpha}, {beta})")]
    DiagRejected {
        property: &'static str,
        alpha: String,
        beta: String,
    },
    #[error("map is not multiplicative at ({x}, {y})")]
    NotMultiplicative { x: String, y: String },
    #[error("map does not preserve the norm form at ({x}, {y})")]
    NotIsometry { x: String, y: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("requires q = 2")]
    RequiresQ2,
    #[error("requires characteristic 2")]
    RequiresEvenCharacteristic,
    #[error("requires odd characteristic")]
    RequiresOddCharacteristic,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("extension disagrees with the loop automorphism at {0}")]
    ExtensionMismatch(String),
}

impl AutError {
    fn not_multiplicative(x: impl ToString, y: impl ToString) -> Self {
        AutError::NotMultiplicative {
            x: x.to_string(),
            y: y.to_string(),
        }
    }
}
