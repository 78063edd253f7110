//! Split octonions over small finite fields, the Moufang loops of their unit
//! elements, and the automorphism groups of those loops.

pub mod autos;
pub mod gf;
pub mod loops;
pub mod scalar;
pub mod theorems;
pub mod zorn;

pub use autos::{AutError, LinearMap, LoopAutomorphism, PermGroup, Permutation};
pub use gf::{Field, FieldElement, Gf, GfError};
pub use loops::{LoopError, LoopKind, LoopTable};
pub use scalar::{FiniteField, Scalar};
pub use zorn::{CayleyOctonion, Octonion, Vec3, ZornError};

/// Seed used by every sampled check unless a caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_2002;

/// Instances drawn by a sampled check.
pub const DEFAULT_SAMPLES: usize = 100_000;

pub type Gf2 = Gf<2>;
pub type Gf3 = Gf<3>;
pub type Gf4 = Gf<4>;
pub type Gf5 = Gf<5>;
pub type Gf7 = Gf<7>;
pub type Gf8 = Gf<8>;
pub type Gf9 = Gf<9>;

pub type Octonion2 = Octonion<Gf2>;
pub type Octonion3 = Octonion<Gf3>;

pub type PaigeLoop2 = LoopTable<zorn::Zorn<Gf2>>;
pub type PaigeLoop3 = LoopTable<zorn::Zorn<Gf3>>;
