use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AutError, LinearMap};
use crate::scalar::{FiniteField, Scalar};
use crate::zorn::{Vec3, Zorn};
use crate::DEFAULT_SEED;

/// The six permutations of `{0, 1, 2}` in lexicographic order.
pub const S3_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// A 3×3 matrix acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix3<F>(pub [[F; 3]; 3]);

impl<F: Scalar> Matrix3<F> {
    pub fn identity() -> Self {
        Matrix3(std::array::from_fn(|r| {
            std::array::from_fn(|c| if r == c { F::one() } else { F::zero() })
        }))
    }

    /// The matrix with `(P alpha)_i = alpha_{pi(i)}`.
    pub fn permutation(pi: [usize; 3]) -> Self {
        Matrix3(std::array::from_fn(|r| {
            std::array::from_fn(|c| if pi[r] == c { F::one() } else { F::zero() })
        }))
    }

    pub fn neg(&self) -> Self {
        Matrix3(self.0.map(|row| row.map(|x| -x)))
    }

    pub fn apply(&self, v: &Vec3<F>) -> Vec3<F> {
        Vec3(std::array::from_fn(|r| {
            (0..3).fold(F::zero(), |acc, c| acc + self.0[r][c] * v.0[c])
        }))
    }

    pub fn det(&self) -> F {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// The block map `(a, alpha; beta, b) -> (a, f alpha; f beta, b)`, unchecked.
pub fn diag_map<F: FiniteField>(f: &Matrix3<F>) -> LinearMap<F> {
    LinearMap::from_fn(|r, c| match (r, c) {
        (0, 0) | (7, 7) => F::one(),
        (1..=3, 1..=3) => f.0[r - 1][c - 1],
        (4..=6, 4..=6) => f.0[r - 4][c - 4],
        _ => F::zero(),
    })
}

fn diag_pairs<F: FiniteField>() -> Box<dyn Iterator<Item = (Vec3<F>, Vec3<F>)>> {
    if F::ORDER <= 3 {
        Box::new(Vec3::<F>::all().flat_map(|u| Vec3::<F>::all().map(move |v| (u, v))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let mut draw = move || {
            Vec3(std::array::from_fn(|_| {
                F::from_index(rng.gen_range(0..F::ORDER)).expect("index below q")
            }))
        };
        Box::new((0..crate::DEFAULT_SAMPLES).map(move |_| (draw(), draw())))
    }
}

/// `diag(f)`, accepted when `f` is invertible and preserves dot and cross
/// products. Checked on every pair for q <= 3 and on seeded samples above.
pub fn diag_automorphism<F: FiniteField>(f: &Matrix3<F>) -> Result<LinearMap<F>, AutError> {
    if f.det().is_zero() {
        return Err(AutError::Singular);
    }
    for (u, v) in diag_pairs::<F>() {
        let (fu, fv) = (f.apply(&u), f.apply(&v));
        let property = if fu.dot(&fv) != u.dot(&v) {
            "dot products"
        } else if f.apply(&u.cross(&v)) != fu.cross(&fv) {
            "cross products"
        } else {
            continue;
        };
        return Err(AutError::DiagRejected {
            property,
            alpha: vec_text(&u),
            beta: vec_text(&v),
        });
    }
    Ok(diag_map(f))
}

fn vec_text<F: FiniteField>(v: &Vec3<F>) -> String {
    format!("({},{},{})", v.0[0], v.0[1], v.0[2])
}

/// Parity of a permutation of `{0, 1, 2}`.
pub fn is_even(pi: [usize; 3]) -> bool {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| pi[i] > pi[j])
        .count();
    inversions % 2 == 0
}

/// `diag(-pi)`. In odd characteristic this is an automorphism only for odd
/// `pi`; for even `pi` the error carries the failing pair.
pub fn perm_automorphism<F: FiniteField>(pi: [usize; 3]) -> Result<LinearMap<F>, AutError> {
    diag_automorphism(&Matrix3::permutation(pi).neg())
}

/// `diag(sgn(pi) pi)`, an automorphism for every `pi` and every q. Equal to
/// [`perm_automorphism`] in characteristic 2.
pub fn signed_perm_automorphism<F: FiniteField>(pi: [usize; 3]) -> LinearMap<F> {
    let p = Matrix3::permutation(pi);
    let f = if is_even(pi) { p } else { p.neg() };
    diag_automorphism(&f).expect("sgn(pi) pi preserves dot and cross products")
}

/// `(a, alpha; beta, b) -> (b, beta; alpha, a)`, unchecked.
pub fn switch_map<F: FiniteField>() -> LinearMap<F> {
    LinearMap::from_fn(|r, c| {
        let target = match c {
            0 => 7,
            7 => 0,
            1..=3 => c + 3,
            _ => c - 3,
        };
        if r == target {
            F::one()
        } else {
            F::zero()
        }
    })
}

/// The diagonal switch, an automorphism exactly in characteristic 2.
/// Otherwise the error carries a pair `(x, y)` with `s(xy) != s(x)s(y)`.
pub fn diagonal_switch<F: FiniteField>() -> Result<LinearMap<F>, AutError> {
    let s = switch_map::<F>();
    match s.multiplicativity_witness::<Zorn<F>>() {
        None => Ok(s),
        Some((x, y)) => Err(AutError::not_multiplicative(x, y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::zorn::{Octonion, OctonionAlgebra};

    fn switch_image<F: FiniteField>(x: &Octonion<F>) -> Octonion<F> {
        Octonion::new(x.b, x.beta, x.alpha, x.a)
    }

    #[test]
    fn identity_is_accepted() {
        assert_eq!(
            diag_automorphism(&Matrix3::<Gf<5>>::identity()),
            Ok(LinearMap::identity())
        );
    }

    #[test]
    fn cyclic_shift_at_q2() {
        let f = Matrix3::<Gf<2>>::permutation([1, 2, 0]);
        let h = diag_automorphism(&f).unwrap();
        assert!(h.is_multiplicative::<Zorn<Gf<2>>>());
        // -pi = pi in characteristic 2
        assert_eq!(perm_automorphism::<Gf<2>>([1, 2, 0]), Ok(h));
    }

    #[test]
    fn transposition_needs_sign_at_q3() {
        let f = Matrix3::<Gf<3>>::permutation([1, 0, 2]);
        assert!(matches!(
            diag_automorphism(&f),
            Err(AutError::DiagRejected {
                property: "cross products",
                ..
            })
        ));
        let h = diag_automorphism(&f.neg()).unwrap();
        assert!(h.is_multiplicative::<Zorn<Gf<3>>>());
        let singular = Matrix3::<Gf<3>>([[Gf::new(1); 3]; 3]);
        assert_eq!(diag_automorphism(&singular), Err(AutError::Singular));
    }

    #[test]
    fn minus_identity_fails_in_odd_characteristic() {
        let minus = diag_map(&Matrix3::<Gf<7>>::identity().neg());
        let x: Octonion<Gf<7>> = "2;(1,3,0);(4,0,6);5".parse().unwrap();
        assert_eq!(
            minus.apply::<Zorn<Gf<7>>>(&x).to_string(),
            "2;(6,4,0);(3,0,1);5"
        );
        assert!(matches!(
            perm_automorphism::<Gf<7>>([0, 1, 2]),
            Err(AutError::DiagRejected {
                property: "cross products",
                ..
            })
        ));
        assert!(!minus.is_multiplicative::<Zorn<Gf<7>>>());
        for pi in S3_PERMUTATIONS {
            assert_eq!(
                perm_automorphism::<Gf<3>>(pi).is_ok(),
                !is_even(pi),
                "{pi:?}"
            );
            assert!(perm_automorphism::<Gf<2>>(pi).is_ok());
            assert!(signed_perm_automorphism::<Gf<5>>(pi).is_multiplicative::<Zorn<Gf<5>>>());
            assert_eq!(
                signed_perm_automorphism::<Gf<4>>(pi),
                perm_automorphism::<Gf<4>>(pi).unwrap()
            );
        }
    }

    #[test]
    fn signed_permutations_form_s3() {
        let maps: Vec<LinearMap<Gf<2>>> = S3_PERMUTATIONS
            .iter()
            .map(|&p| perm_automorphism(p).unwrap())
            .collect();
        let set: std::collections::HashSet<_> = maps.iter().copied().collect();
        assert_eq!(set.len(), 6);
        for f in &maps {
            for g in &maps {
                assert!(set.contains(&f.compose(g)));
            }
        }
        // non-abelian
        assert!(maps
            .iter()
            .any(|f| maps.iter().any(|g| f.compose(g) != g.compose(f))));
    }

    #[test]
    fn switch_even_and_odd() {
        let s = diagonal_switch::<Gf<2>>().unwrap();
        assert_eq!(s.compose(&s), LinearMap::identity());
        assert!(s.audit_all_pairs::<Zorn<Gf<2>>>().is_none());
        assert!(diagonal_switch::<Gf<4>>().is_ok());
        let Err(AutError::NotMultiplicative { x, y }) = diagonal_switch::<Gf<3>>() else {
            panic!("switch accepted at q = 3");
        };
        let (x, y): (Octonion<Gf<3>>, Octonion<Gf<3>>) = (x.parse().unwrap(), y.parse().unwrap());
        assert_ne!(switch_image(&(x * y)), switch_image(&x) * switch_image(&y));
        assert!(switch_map::<Gf<3>>()
            .audit_all_pairs::<Zorn<Gf<3>>>()
            .is_some());
    }

    #[test]
    fn switch_of_u0() {
        let s = switch_map::<Gf<2>>();
        let u0 = crate::loops::named::named(crate::loops::named::U0);
        let img = s.apply::<Zorn<Gf<2>>>(&u0);
        assert_eq!(img, switch_image(&u0));
        assert_eq!(img.to_string(), "1;(1,1,0);(0,0,0);1");
        assert_eq!(Zorn::<Gf<2>>::norm(&img), Gf::new(1));
    }
}
