//! Scalar traits shared by every algebra in the crate.
//!
//! The octonion arithmetic only needs a commutative ring with a few extra
//! hooks, so it is written against [`Scalar`]. Enumeration, loop tables and
//! everything that walks an entire algebra additionally needs [`FiniteField`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

pub trait Scalar:
    Copy
    + Eq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Characteristic of the ring, `0` for rings of characteristic zero.
    fn characteristic() -> u32;

    /// Multiplicative inverse, `None` when the element is not a unit.
    fn try_inv(self) -> Option<Self>;

    /// Image of an integer under the canonical ring homomorphism.
    fn from_int(n: i64) -> Self;
}

/// A finite field whose elements are addressed by a canonical index in `0..ORDER`.
///
/// Index `0` is zero and index `1` is one. The order on elements is the order
/// on indices, which is what makes enumeration and certificates reproducible.
pub trait FiniteField: Scalar + Ord + Hash + Display {
    const ORDER: u32;

    fn from_index(index: u32) -> Option<Self>;

    fn index(self) -> u32;

    fn elements() -> impl Iterator<Item = Self> + Clone {
        (0..Self::ORDER).map(|i| Self::from_index(i).expect("index below ORDER"))
    }

    fn is_prime_field() -> bool {
        Self::ORDER == Self::characteristic()
    }
}

impl Scalar for Ratio<i64> {
    fn characteristic() -> u32 {
        0
    }

    fn try_inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}
