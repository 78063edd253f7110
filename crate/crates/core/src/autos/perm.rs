use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{AutError, LinearMap};
use crate::loops::LoopTable;
use crate::scalar::FiniteField;
use crate::zorn::OctonionAlgebra;
use crate::{DEFAULT_SAMPLES, DEFAULT_SEED};

/// A bijection of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, AutError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(AutError::InvalidPermutation(n)),
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

/// How a loop automorphism was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Diag,
    Perm,
    Switch,
    Conj,
    Psi,
    Composite,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Diag => "diag",
            Provenance::Perm => "perm",
            Provenance::Switch => "switch",
            Provenance::Conj => "conj",
            Provenance::Psi => "psi",
            Provenance::Composite => "composite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopAutomorphism<F: FiniteField> {
    pub perm: Permutation,
    pub provenance: Provenance,
    pub label: String,
    pub linear: Option<LinearMap<F>>,
}

impl<F: FiniteField> LoopAutomorphism<F> {
    pub fn identity(n: usize) -> Self {
        LoopAutomorphism {
            perm: Permutation::identity(n),
            provenance: Provenance::Composite,
            label: "id".into(),
            linear: Some(LinearMap::identity()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        LoopAutomorphism {
            perm: self.perm.compose(&other.perm),
            provenance: Provenance::Composite,
            label: format!("{}*{}", self.label, other.label),
            linear: self.linear.zip(other.linear).map(|(f, g)| f.compose(&g)),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = AutError;
    fn from_str(s: &str) -> Result<Self, AutError> {
        Ok(match s {
            "diag" => Provenance::Diag,
            "perm" => Provenance::Perm,
            "switch" => Provenance::Switch,
            "conj" => Provenance::Conj,
            "psi" => Provenance::Psi,
            "composite" => Provenance::Composite,
            _ => return Err(AutError::Precondition(format!("unknown provenance `{s}`"))),
        })
    }
}

/// First pair `(i, j)` with `g(ij) != g(i)g(j)`, over all pairs.
pub fn audit_all_pairs<A: OctonionAlgebra>(
    t: &LoopTable<A>,
    g: &Permutation,
) -> Option<(u32, u32)> {
    let n = t.len() as u32;
    (0..n).into_par_iter().find_map_first(|i| {
        (0..n)
            .find_map(|j| (g.apply(t.mul(i, j)) != t.mul(g.apply(i), g.apply(j))).then_some((i, j)))
    })
}

/// Like [`audit_all_pairs`] on `samples` seeded random pairs.
pub fn audit_sampled<A: OctonionAlgebra>(
    t: &LoopTable<A>,
    g: &Permutation,
    samples: usize,
    seed: u64,
) -> Option<(u32, u32)> {
    let n = t.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..samples)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    pairs
        .into_par_iter()
        .find_first(|&(i, j)| g.apply(t.mul(i, j)) != t.mul(g.apply(i), g.apply(j)))
}

/// Exhaustive at q = 2, sampled with the default seed otherwise.
pub fn audit_loop_automorphism<A: OctonionAlgebra>(
    t: &LoopTable<A>,
    g: &Permutation,
) -> Result<(), AutError> {
    if g.len() != t.len() {
        return Err(AutError::InvalidPermutation(t.len()));
    }
    if g.apply(0) != 0 {
        return Err(AutError::Precondition("identity is not fixed".into()));
    }
    let witness = if A::Scalar::ORDER == 2 {
        audit_all_pairs(t, g)
    } else {
        audit_sampled(t, g, DEFAULT_SAMPLES, DEFAULT_SEED)
    };
    match witness {
        None => Ok(()),
        Some((i, j)) => Err(AutError::not_multiplicative(t.element(i), t.element(j))),
    }
}

/// `y -> x^{-1} y x` as a permutation, without checking anything.
pub fn conjugation_unchecked<A: OctonionAlgebra>(t: &LoopTable<A>, x: u32) -> Permutation {
    Permutation((0..t.len() as u32).map(|y| t.conjugate_by(x, y)).collect())
}

/// `T_x`, for `x` with `x^3 = e`.
pub fn conjugation<A: OctonionAlgebra>(
    t: &LoopTable<A>,
    x: u32,
) -> Result<LoopAutomorphism<A::Scalar>, AutError> {
    t.checked_mul(x, 0)?;
    if t.pow(x, 3) != 0 {
        return Err(AutError::Precondition(format!(
            "x^3 != e for x = {}",
            t.element(x)
        )));
    }
    let perm = conjugation_unchecked(t, x);
    audit_loop_automorphism(t, &perm)?;
    Ok(LoopAutomorphism {
        perm,
        provenance: Provenance::Conj,
        label: format!("T[{}]", t.element(x)),
        linear: None,
    })
}

/// The permutation a norm-preserving algebra automorphism induces on the loop.
pub fn restrict<A: OctonionAlgebra>(
    h: &LinearMap<A::Scalar>,
    t: &LoopTable<A>,
) -> Result<Permutation, AutError> {
    if let Some((x, y)) = h.isometry_witness::<A>() {
        return Err(AutError::NotIsometry {
            x: x.to_string(),
            y: y.to_string(),
        });
    }
    if let Some((x, y)) = h.multiplicativity_witness::<A>() {
        return Err(AutError::not_multiplicative(x, y));
    }
    let images = t
        .elements()
        .iter()
        .map(|x| {
            t.lookup(&h.apply::<A>(x))
                .expect("isometries preserve the sphere")
        })
        .collect();
    Ok(Permutation(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{diagonal_switch, perm_automorphism, switch_map, S3_PERMUTATIONS};
    use crate::gf::Gf;
    use crate::loops::named::{self, named};
    use crate::zorn::Zorn;

    type Z2 = Zorn<Gf<2>>;

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let q = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // right to left: q first
        assert_eq!(p.compose(&q).images(), &[1, 0, 2]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(AutError::InvalidPermutation(3))
        );
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn provenance_text_round_trip() {
        for p in [
            Provenance::Diag,
            Provenance::Perm,
            Provenance::Switch,
            Provenance::Conj,
            Provenance::Psi,
            Provenance::Composite,
        ] {
            assert_eq!(p.to_string().parse::<Provenance>(), Ok(p));
        }
        assert!("nope".parse::<Provenance>().is_err());
    }

    #[test]
    fn conjugations_at_q2() {
        let t = LoopTable::<Z2>::paige().unwrap();
        assert!(conjugation(&t, 0).unwrap().perm.is_identity());
        let y = t.lookup(&named(named::Y)).unwrap();
        let x1 = t.lookup(&named(named::X1)).unwrap();
        let x0 = t.lookup(&named(named::X0)).unwrap();
        assert_eq!(conjugation(&t, y).unwrap().perm.apply(x1), x0);
        // x^3 = e is necessary
        for x in 1..t.len() as u32 {
            let raw = conjugation_unchecked(&t, x);
            assert_eq!(audit_all_pairs(&t, &raw).is_none(), t.pow(x, 3) == 0, "{x}");
        }
        assert!(matches!(
            conjugation(&t, x0),
            Err(AutError::Precondition(_))
        ));
    }

    #[test]
    fn restrictions_at_q2() {
        let t = LoopTable::<Z2>::paige().unwrap();
        assert!(restrict(&LinearMap::identity(), &t).unwrap().is_identity());
        let s = restrict(&diagonal_switch::<Gf<2>>().unwrap(), &t).unwrap();
        let u0 = t.lookup(&named(named::U0)).unwrap();
        assert_eq!(t.element(s.apply(u0)).to_string(), "1;(1,1,0);(0,0,0);1");
        assert!(audit_loop_automorphism(&t, &s).is_ok());
        for pi in S3_PERMUTATIONS {
            let p = restrict(&perm_automorphism::<Gf<2>>(pi).unwrap(), &t).unwrap();
            assert!(audit_loop_automorphism(&t, &p).is_ok());
        }
    }

    #[test]
    fn restrict_rejects_non_isometries() {
        let t = LoopTable::<Z2>::paige().unwrap();
        let scale = LinearMap::<Gf<2>>::from_fn(|r, c| {
            if r == c || (r, c) == (0, 1) {
                Gf::new(1)
            } else {
                Gf::new(0)
            }
        });
        assert!(matches!(
            restrict(&scale, &t),
            Err(AutError::NotIsometry { .. })
        ));
    }

    #[test]
    fn sampled_audit_at_q3() {
        let t = LoopTable::<Zorn<Gf<3>>>::paige().unwrap();
        let p = restrict(&perm_automorphism::<Gf<3>>([1, 0, 2]).unwrap(), &t).unwrap();
        assert!(audit_loop_automorphism(&t, &p).is_ok());
        // the switch is an isometry but not multiplicative at q = 3
        assert!(matches!(
            restrict(&switch_map::<Gf<3>>(), &t),
            Err(AutError::NotMultiplicative { .. })
        ));
    }
}
