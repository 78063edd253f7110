use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{Vec3, ZornError};
use crate::scalar::{FiniteField, Scalar};

/// A Zorn vector matrix `(a, alpha; beta, b)`.
///
/// Field order (and so the derived `Ord`) is the enumeration order
/// `(a, a1, a2, a3, b1, b2, b3, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Octonion<S> {
    pub a: S,
    pub alpha: Vec3<S>,
    pub beta: Vec3<S>,
    pub b: S,
}

/// Which of `x^2 = e`, `x^2 = -e`, `x^3 = e`, `x^3 = -e` hold, read off the
/// entries of a norm-one element without multiplying.
///
/// Several flags can hold at once (`e` itself satisfies both identity flags,
/// `-e` in characteristic 3 satisfies `square_identity` and `cube_neg_identity`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderPredicates {
    pub square_identity: bool,
    pub square_neg_identity: bool,
    pub cube_identity: bool,
    pub cube_neg_identity: bool,
}

impl OrderPredicates {
    pub fn is_other(&self) -> bool {
        !(self.square_identity
            || self.square_neg_identity
            || self.cube_identity
            || self.cube_neg_identity)
    }
}

impl<S: Scalar> Octonion<S> {
    pub fn new(a: S, alpha: Vec3<S>, beta: Vec3<S>, b: S) -> Self {
        Octonion { a, alpha, beta, b }
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn zero() -> Self {
        Self::scalar(S::zero())
    }

    pub fn scalar(s: S) -> Self {
        Octonion::new(s, Vec3::zero(), Vec3::zero(), s)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn scale(&self, s: S) -> Self {
        Octonion::new(
            s * self.a,
            self.alpha.scale(s),
            self.beta.scale(s),
            s * self.b,
        )
    }

    /// The determinant `ab - alpha.beta`.
    pub fn norm(&self) -> S {
        self.a * self.b - self.alpha.dot(&self.beta)
    }

    /// Polar form of the norm, `N(x+y) - N(x) - N(y)`, in closed form.
    pub fn bilinear(&self, other: &Self) -> S {
        self.a * other.b + self.b * other.a
            - self.alpha.dot(&other.beta)
            - self.beta.dot(&other.alpha)
    }

    /// `<x, e>`.
    pub fn trace(&self) -> S {
        self.a + self.b
    }

    pub fn conjugate(&self) -> Self {
        Octonion::new(self.b, -self.alpha, -self.beta, self.a)
    }

    pub fn inverse(&self) -> Result<Self, ZornError> {
        let n_inv = self.norm().try_inv().ok_or(ZornError::Singular)?;
        Ok(self.conjugate().scale(n_inv))
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// `x^2 - <x,e> x + N(x) e`; zero in every composition algebra.
    pub fn minimal_eq_residual(&self) -> Self {
        *self * *self - self.scale(self.trace()) + Self::scalar(self.norm())
    }

    /// Closed-form order predicates for a norm-one element.
    ///
    /// In characteristic 2 the conditions for `e` and `-e` coincide, so the
    /// identity flags are the union of the two conditions there.
    pub fn order_predicates(&self) -> Result<OrderPredicates, ZornError> {
        if !self.norm().is_one() {
            return Err(ZornError::NormNotOne);
        }
        let one = S::one();
        let (a, b) = (self.a, self.b);
        let diagonal = self.alpha.is_zero() && self.beta.is_zero();
        let b_is_a_inv = a.try_inv() == Some(b);
        let a2 = a * a;
        let a3 = a2 * a;

        let sq_id = diagonal && a == b && (a == one || a == -one);
        let sq_neg = (diagonal && b_is_a_inv && a2 == -one) || (!diagonal && b == -a);
        let cube_id = (diagonal && b_is_a_inv && a3 == one) || (!diagonal && b == -one - a);
        let cube_neg = (diagonal && b_is_a_inv && a3 == -one) || (!diagonal && b == one - a);

        let char2 = S::characteristic() == 2;
        Ok(OrderPredicates {
            square_identity: sq_id || (char2 && sq_neg),
            square_neg_identity: sq_neg,
            cube_identity: cube_id,
            cube_neg_identity: cube_neg || (char2 && cube_id),
        })
    }

    /// The three Moufang identities, each as left side minus right side.
    pub fn moufang_residuals(x: &Self, y: &Self, z: &Self) -> [Self; 3] {
        let (x, y, z) = (*x, *y, *z);
        [
            (x * y) * (z * x) - x * ((y * z) * x),
            x * (y * (x * z)) - ((x * y) * x) * z,
            x * (y * (z * y)) - ((x * y) * z) * y,
        ]
    }

    pub fn coords(&self) -> [S; 8] {
        let [a1, a2, a3] = self.alpha.0;
        let [b1, b2, b3] = self.beta.0;
        [self.a, a1, a2, a3, b1, b2, b3, self.b]
    }

    pub fn from_coords(c: [S; 8]) -> Self {
        Octonion::new(
            c[0],
            Vec3([c[1], c[2], c[3]]),
            Vec3([c[4], c[5], c[6]]),
            c[7],
        )
    }
}

impl<F: FiniteField> Octonion<F> {
    /// Multiplicative order, by repeated multiplication with a cap of q^8 steps.
    pub fn order(&self) -> Result<u64, ZornError> {
        if self.norm().is_zero() {
            return Err(ZornError::Singular);
        }
        let cap = (F::ORDER as u64).pow(8);
        let e = Self::identity();
        let mut power = *self;
        let mut m = 1;
        while power != e {
            if m >= cap {
                return Err(ZornError::OrderCapExceeded(cap));
            }
            power = power * *self;
            m += 1;
        }
        Ok(m)
    }

    /// Dense key in `0..q^8`, monotone in the enumeration order.
    pub fn key(&self) -> u32 {
        self.coords()
            .iter()
            .fold(0u32, |acc, c| acc * F::ORDER + c.index())
    }

    pub fn from_key(mut key: u32) -> Option<Self> {
        let q = F::ORDER;
        let mut c = [F::zero(); 8];
        for slot in c.iter_mut().rev() {
            *slot = F::from_index(key % q)?;
            key /= q;
        }
        (key == 0).then(|| Self::from_coords(c))
    }

    /// All q^8 elements in enumeration order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..F::ORDER.pow(8)).map(|k| Self::from_key(k).expect("key in range"))
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Octonion::new(
            self.a + rhs.a,
            self.alpha + rhs.alpha,
            self.beta + rhs.beta,
            self.b + rhs.b,
        )
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Octonion::new(
            self.a - rhs.a,
            self.alpha - rhs.alpha,
            self.beta - rhs.beta,
            self.b - rhs.b,
        )
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion::new(-self.a, -self.alpha, -self.beta, -self.b)
    }
}

impl<S: Scalar> Mul for Octonion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let Octonion { a, alpha, beta, b } = self;
        let Octonion {
            a: c,
            alpha: gamma,
            beta: delta,
            b: d,
        } = rhs;
        Octonion::new(
            a * c + alpha.dot(&delta),
            gamma.scale(a) + alpha.scale(d) - beta.cross(&delta),
            beta.scale(c) + delta.scale(b) + alpha.cross(&gamma),
            beta.dot(&gamma) + b * d,
        )
    }
}

impl<S: Scalar> Zero for Octonion<S> {
    fn zero() -> Self {
        Octonion::scalar(S::zero())
    }
    fn is_zero(&self) -> bool {
        Octonion::is_zero(self)
    }
}

impl<S: Scalar> One for Octonion<S> {
    fn one() -> Self {
        Octonion::identity()
    }
}

impl<F: FiniteField> fmt::Display for Octonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3] = self.alpha.0;
        let [b1, b2, b3] = self.beta.0;
        write!(
            f,
            "{};({},{},{});({},{},{});{}",
            self.a, a1, a2, a3, b1, b2, b3, self.b
        )
    }
}

impl<F: FiniteField> FromStr for Octonion<F> {
    type Err = ZornError;

    /// Parses `a;(a1,a2,a3);(b1,b2,b3);b` with canonical field indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| ZornError::Parse(format!("{why} in `{s}`"));
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 4 {
            return Err(bad("expected four `;`-separated parts"));
        }
        let scalar = |t: &str| -> Result<F, ZornError> {
            let i: u32 = t.parse().map_err(|_| bad("invalid field index"))?;
            F::from_index(i).ok_or_else(|| bad("field index out of range"))
        };
        let vector = |t: &str| -> Result<Vec3<F>, ZornError> {
            let inner = t
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad("vector must be parenthesised"))?;
            let cs: Vec<&str> = inner.split(',').collect();
            if cs.len() != 3 {
                return Err(bad("vector needs three coordinates"));
            }
            Ok(Vec3([scalar(cs[0])?, scalar(cs[1])?, scalar(cs[2])?]))
        };
        Ok(Octonion::new(
            scalar(parts[0])?,
            vector(parts[1])?,
            vector(parts[2])?,
            scalar(parts[3])?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    type O2 = Octonion<Gf<2>>;
    type O3 = Octonion<Gf<3>>;

    fn p2(s: &str) -> O2 {
        s.parse().unwrap()
    }

    #[test]
    fn product_example() {
        let x = p2("0;(1,0,0);(1,0,0);1");
        let y = p2("0;(0,1,0);(0,1,0);0");
        assert_eq!(x * y, p2("0;(0,0,1);(0,1,1);0"));
        for z in O2::all() {
            assert_eq!(O2::identity() * z, z);
            assert_eq!(z * O2::identity(), z);
        }
    }

    #[test]
    fn norms() {
        assert!(O2::identity().norm().is_one());
        assert!(p2("0;(1,1,1);(1,1,1);0").norm().is_one());
        let x: O3 = "1;(0,0,0);(0,0,0);2".parse().unwrap();
        assert_eq!(x.norm(), Gf::new(2));
    }

    #[test]
    fn bilinear_matches_polarisation() {
        for x in O2::all() {
            assert!(x.bilinear(&O2::zero()).is_zero());
            for y in O2::all().step_by(3) {
                assert_eq!(x.bilinear(&y), (x + y).norm() + x.norm() + y.norm());
            }
        }
        assert!(O2::identity().bilinear(&O2::identity()).is_zero());
        assert_eq!(O3::identity().bilinear(&O3::identity()), Gf::new(2));
    }

    #[test]
    fn inverses() {
        assert_eq!(
            p2("0;(1,0,0);(1,0,0);1").inverse().unwrap(),
            p2("1;(1,0,0);(1,0,0);0")
        );
        assert_eq!(O2::identity().inverse().unwrap(), O2::identity());
        assert_eq!(
            p2("1;(1,0,0);(1,0,0);1").inverse(),
            Err(ZornError::Singular)
        );
    }

    #[test]
    fn orders() {
        assert_eq!(O2::identity().order().unwrap(), 1);
        assert_eq!(p2("1;(1,1,0);(0,1,1);0").order().unwrap(), 3);
        assert_eq!(p2("0;(1,1,1);(1,1,1);0").order().unwrap(), 2);
        assert_eq!(O2::zero().order(), Err(ZornError::Singular));
    }

    #[test]
    fn order_predicate_examples() {
        let e = O3::identity().order_predicates().unwrap();
        assert!(e.square_identity && e.cube_identity);
        let minus_e: O3 = "2;(0,0,0);(0,0,0);2".parse().unwrap();
        let p = minus_e.order_predicates().unwrap();
        assert!(p.cube_neg_identity && p.square_identity && !p.cube_identity);
        assert_eq!(O3::zero().order_predicates(), Err(ZornError::NormNotOne));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = "0;(1,1,1);(1,1,1);0";
        assert_eq!(p2(s).to_string(), s);
        assert!("0;(1,1);(1,1,1);0".parse::<O2>().is_err());
        assert!("0;(1,1,2);(1,1,1);0".parse::<O2>().is_err());
        assert!("0;1,1,1;(1,1,1);0".parse::<O2>().is_err());
        assert!("0;(1,1,1);(1,1,1)".parse::<O2>().is_err());
    }

    #[test]
    fn keys_follow_enumeration_order() {
        let all: Vec<O2> = O2::all().collect();
        assert_eq!(all.len(), 256);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (k, x) in all.iter().enumerate() {
            assert_eq!(x.key(), k as u32);
        }
        assert_eq!(O2::from_key(256), None);
    }
}
