use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::scalar::{FiniteField, Scalar};

/// A vector in k^3 with the standard dot and cross products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec3<S>(pub [S; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3([S::zero(); 3])
    }

    /// The i-th standard basis vector, `i` in 0..3.
    pub fn unit(i: usize) -> Self {
        let mut v = [S::zero(); 3];
        v[i] = S::one();
        Vec3(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> S {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        a1 * b1 + a2 * b2 + a3 * b3
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn scale(&self, s: S) -> Self {
        Vec3(self.0.map(|c| s * c))
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<F: FiniteField> Vec3<F> {
    /// All of k^3 in lexicographic order of canonical indices.
    pub fn all() -> impl Iterator<Item = Self> + Clone {
        F::elements().flat_map(|x| {
            F::elements().flat_map(move |y| F::elements().map(move |z| Vec3([x, y, z])))
        })
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Vec3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Vec3([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3(self.0.map(|c| -c))
    }
}

impl<S: Scalar> Zero for Vec3<S> {
    fn zero() -> Self {
        Vec3([S::zero(); 3])
    }
    fn is_zero(&self) -> bool {
        Vec3::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    type V2 = Vec3<Gf<2>>;
    type V3 = Vec3<Gf<3>>;

    #[test]
    fn cross_product_is_orthogonal_and_antisymmetric() {
        for a in V3::all() {
            for b in V3::all() {
                let c = a.cross(&b);
                assert!(c.dot(&a).is_zero() && c.dot(&b).is_zero());
                assert_eq!(c, -b.cross(&a));
            }
        }
    }

    #[test]
    fn weight_and_enumeration() {
        assert_eq!(V2::all().count(), 8);
        assert_eq!(V3::all().count(), 27);
        let w: Vec<usize> = V2::all().map(|v| v.weight()).collect();
        assert_eq!(w, vec![0, 1, 1, 2, 1, 2, 2, 3]);
        let first: Vec<V2> = V2::all().take(2).collect();
        assert_eq!(first[1], V2::unit(2));
    }
}
