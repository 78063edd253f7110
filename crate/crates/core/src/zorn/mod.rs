//! The split octonion algebra over a scalar ring.
//!
//! [`Octonion`] is the Zorn vector-matrix model and is generic over any
//! [`Scalar`]; [`CayleyOctonion`] is the seven-unit construction, only valid in
//! odd characteristic. [`OctonionAlgebra`] abstracts over the two so that unit
//! loops, linear maps and audits are written once.

mod cayley;
mod decompose;
mod octonion;
mod vec3;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use cayley::{cayley_mul, structural_constant, CayleyOctonion, STRUCTURE};
pub use decompose::decompose_norm_one;
pub use octonion::{Octonion, OrderPredicates};
pub use vec3::Vec3;

use crate::scalar::{FiniteField, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZornError {
    #[error("element has norm zero and is not invertible")]
    Singular,
    #[error("element does not have norm one")]
    NormNotOne,
    #[error("no power up to {0} equals the identity")]
    OrderCapExceeded(u64),
    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(&'static str),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// An 8-dimensional composition algebra over a finite field, seen through
/// its coordinates.
pub trait OctonionAlgebra: Send + Sync + 'static {
    type Scalar: FiniteField;
    type Elem: Copy
        + Eq
        + Ord
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + Add<Output = Self::Elem>
        + Sub<Output = Self::Elem>
        + Neg<Output = Self::Elem>
        + Mul<Output = Self::Elem>;

    const NAME: &'static str;

    /// Whether the construction is a composition algebra over `Self::Scalar`.
    fn check_supported() -> Result<(), ZornError>;

    fn one() -> Self::Elem;

    fn norm(x: &Self::Elem) -> Self::Scalar;

    fn conjugate(x: &Self::Elem) -> Self::Elem;

    fn coords(x: &Self::Elem) -> [Self::Scalar; 8];

    fn from_coords(c: [Self::Scalar; 8]) -> Self::Elem;

    fn bilinear(x: &Self::Elem, y: &Self::Elem) -> Self::Scalar {
        Self::norm(&(*x + *y)) - Self::norm(x) - Self::norm(y)
    }

    fn scale(x: &Self::Elem, s: Self::Scalar) -> Self::Elem {
        Self::from_coords(Self::coords(x).map(|c| s * c))
    }

    /// The standard coordinate basis vector `i`.
    fn basis(i: usize) -> Self::Elem {
        let mut c = [<Self::Scalar as num_traits::Zero>::zero(); 8];
        c[i] = <Self::Scalar as num_traits::One>::one();
        Self::from_coords(c)
    }

    /// Every element, in lexicographic order of coordinate indices.
    fn all() -> impl Iterator<Item = Self::Elem> {
        let q = <Self::Scalar as FiniteField>::ORDER;
        (0..q.pow(8)).map(move |mut key| {
            let mut c = [<Self::Scalar as num_traits::Zero>::zero(); 8];
            for slot in c.iter_mut().rev() {
                *slot = Self::Scalar::from_index(key % q).expect("index below q");
                key /= q;
            }
            Self::from_coords(c)
        })
    }
}

/// Marker for the Zorn vector-matrix model over `F`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Zorn<F>(PhantomData<F>);

/// Marker for the compact seven-unit model over `F` (odd characteristic).
#[derive(Debug, Clone, Copy, Default)]
pub struct Cayley<F>(PhantomData<F>);

impl<F: FiniteField> OctonionAlgebra for Zorn<F> {
    type Scalar = F;
    type Elem = Octonion<F>;
    const NAME: &'static str = "zorn";

    fn check_supported() -> Result<(), ZornError> {
        Ok(())
    }
    fn one() -> Octonion<F> {
        Octonion::identity()
    }
    fn norm(x: &Octonion<F>) -> F {
        x.norm()
    }
    fn conjugate(x: &Octonion<F>) -> Octonion<F> {
        x.conjugate()
    }
    fn coords(x: &Octonion<F>) -> [F; 8] {
        x.coords()
    }
    fn from_coords(c: [F; 8]) -> Octonion<F> {
        Octonion::from_coords(c)
    }
    fn bilinear(x: &Octonion<F>, y: &Octonion<F>) -> F {
        x.bilinear(y)
    }
}

impl<F: FiniteField> OctonionAlgebra for Cayley<F> {
    type Scalar = F;
    type Elem = CayleyOctonion<F>;
    const NAME: &'static str = "cayley";

    fn check_supported() -> Result<(), ZornError> {
        CayleyOctonion::<F>::check_characteristic()
    }
    fn one() -> CayleyOctonion<F> {
        CayleyOctonion::identity()
    }
    fn norm(x: &CayleyOctonion<F>) -> F {
        x.norm()
    }
    fn conjugate(x: &CayleyOctonion<F>) -> CayleyOctonion<F> {
        x.conjugate()
    }
    fn coords(x: &CayleyOctonion<F>) -> [F; 8] {
        x.0
    }
    fn from_coords(c: [F; 8]) -> CayleyOctonion<F> {
        CayleyOctonion(c)
    }
}

/// Free-standing forms of the core operations, for callers that prefer functions.
pub fn oct_mul<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> Octonion<S> {
    *x * *y
}

pub fn oct_norm<S: Scalar>(x: &Octonion<S>) -> S {
    x.norm()
}

pub fn oct_bilinear<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> S {
    x.bilinear(y)
}

pub fn oct_inverse<S: Scalar>(x: &Octonion<S>) -> Result<Octonion<S>, ZornError> {
    x.inverse()
}

pub fn oct_order<F: FiniteField>(x: &Octonion<F>) -> Result<u64, ZornError> {
    x.order()
}

/// Unit-norm elements of `A` in enumeration order.
pub fn unit_sphere<A: OctonionAlgebra>() -> Vec<A::Elem> {
    let one = <A::Scalar as num_traits::One>::one();
    A::all().filter(|x| A::norm(x) == one).collect()
}
