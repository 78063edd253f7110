//! The compact seven-imaginary-unit construction, imitated over GF(q) for odd q.
//!
//! Basis `e0 = 1, e1, ..., e7` with `e_r^2 = -1`, `e_r e_s = -e_s e_r` and
//! `e_{r+1} e_{r+3} = e_{r+2} e_{r+6} = e_{r+4} e_{r+5} = e_r`, indices of the
//! imaginary units taken modulo 7 in `1..=7`. Every product of two basis
//! vectors is a signed basis vector, so the norm is the sum of squares.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ZornError;
use crate::scalar::{FiniteField, Scalar};

/// `STRUCTURE[i][j] = (k, sign)` with `e_i e_j = sign * e_k`.
pub static STRUCTURE: [[(u8, i8); 8]; 8] = build_structure();

const fn unit(k: usize) -> usize {
    (k - 1) % 7 + 1
}

const fn build_structure() -> [[(u8, i8); 8]; 8] {
    let mut t = [[(0u8, 0i8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (i as u8, 1);
        t[i][0] = (i as u8, 1);
        i += 1;
    }
    let mut r = 1;
    while r <= 7 {
        t[r][r] = (0, -1);
        let pairs = [(r + 1, r + 3), (r + 2, r + 6), (r + 4, r + 5)];
        let mut p = 0;
        while p < 3 {
            let (i, j) = (unit(pairs[p].0), unit(pairs[p].1));
            t[i][j] = (r as u8, 1);
            t[j][i] = (r as u8, -1);
            p += 1;
        }
        r += 1;
    }
    t
}

/// Structural constant `gamma_ijk` as an integer in {-1, 0, 1}.
pub fn structural_constant(i: usize, j: usize, k: usize) -> i8 {
    let (kk, sign) = STRUCTURE[i][j];
    if kk as usize == k {
        sign
    } else {
        0
    }
}

/// An element `sum a_i e_i` of the compact construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CayleyOctonion<S>(pub [S; 8]);

impl<S: Scalar> CayleyOctonion<S> {
    /// Fails in characteristic 2, where the construction is not a composition algebra.
    pub fn new(coords: [S; 8]) -> Result<Self, ZornError> {
        Self::check_characteristic()?;
        Ok(CayleyOctonion(coords))
    }

    pub fn check_characteristic() -> Result<(), ZornError> {
        if S::characteristic() == 2 {
            Err(ZornError::UnsupportedConstruction(
                "the compact construction needs odd characteristic",
            ))
        } else {
            Ok(())
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [S::zero(); 8];
        c[i] = S::one();
        CayleyOctonion(c)
    }

    pub fn identity() -> Self {
        Self::basis(0)
    }

    pub fn norm(&self) -> S {
        self.0.iter().fold(S::zero(), |acc, &c| acc + c * c)
    }

    pub fn conjugate(&self) -> Self {
        let mut c = self.0.map(|x| -x);
        c[0] = self.0[0];
        CayleyOctonion(c)
    }

    pub fn scale(&self, s: S) -> Self {
        CayleyOctonion(self.0.map(|x| s * x))
    }
}

/// Checked product: refuses even characteristic.
pub fn cayley_mul<S: Scalar>(
    u: &CayleyOctonion<S>,
    v: &CayleyOctonion<S>,
) -> Result<CayleyOctonion<S>, ZornError> {
    CayleyOctonion::<S>::check_characteristic()?;
    Ok(*u * *v)
}

impl<S: Scalar> Mul for CayleyOctonion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [S::zero(); 8];
        for (i, &x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in rhs.0.iter().enumerate() {
                let (k, sign) = STRUCTURE[i][j];
                let t = x * y;
                let k = k as usize;
                out[k] = if sign > 0 { out[k] + t } else { out[k] - t };
            }
        }
        CayleyOctonion(out)
    }
}

impl<S: Scalar> Add for CayleyOctonion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CayleyOctonion(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<S: Scalar> Sub for CayleyOctonion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CayleyOctonion(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<S: Scalar> Neg for CayleyOctonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        CayleyOctonion(self.0.map(|x| -x))
    }
}

impl<F: FiniteField> fmt::Display for CayleyOctonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use num_traits::Zero;

    type C3 = CayleyOctonion<Gf<3>>;

    #[test]
    fn one_nonzero_constant_per_pair() {
        for i in 0..8 {
            for j in 0..8 {
                let nonzero: Vec<i8> = (0..8)
                    .map(|k| structural_constant(i, j, k))
                    .filter(|&g| g != 0)
                    .collect();
                assert_eq!(nonzero.len(), 1);
                assert!(nonzero[0] == 1 || nonzero[0] == -1);
            }
        }
        // each e_k (k >= 1) arises from exactly six ordered pairs of imaginary units
        for k in 1..8 {
            let n = (1..8)
                .flat_map(|i| (1..8).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && STRUCTURE[i][j].0 as usize == k)
                .count();
            assert_eq!(n, 6);
        }
    }

    #[test]
    fn basis_products() {
        for r in 0..8 {
            assert_eq!(C3::identity() * C3::basis(r), C3::basis(r));
        }
        assert_eq!(C3::basis(2) * C3::basis(4), C3::basis(1));
        assert_eq!(C3::basis(4) * C3::basis(2), -C3::basis(1));
        assert_eq!(C3::basis(3) * C3::basis(7), C3::basis(1));
        assert_eq!(C3::basis(5) * C3::basis(6), C3::basis(1));
        assert_eq!(C3::basis(1) * C3::basis(1), -C3::identity());
    }

    #[test]
    fn even_characteristic_is_refused() {
        assert!(CayleyOctonion::<Gf<2>>::new([Gf::new(0); 8]).is_err());
        let u = CayleyOctonion::<Gf<4>>::basis(1);
        assert!(matches!(
            cayley_mul(&u, &u),
            Err(ZornError::UnsupportedConstruction(_))
        ));
        assert!(cayley_mul(&C3::basis(1), &C3::basis(2)).is_ok());
    }

    #[test]
    fn conjugate_inverts_unit_norm() {
        let x = C3::new([1, 1, 1, 0, 0, 0, 0, 0].map(Gf::new)).unwrap();
        assert!(x.norm().is_zero());
        let y = C3::new([1, 1, 1, 1, 0, 0, 0, 0].map(Gf::new)).unwrap();
        assert_eq!(y.norm(), Gf::new(1));
        assert_eq!(y * y.conjugate(), C3::identity());
        assert_eq!(y.conjugate() * y, C3::identity());
    }
}
