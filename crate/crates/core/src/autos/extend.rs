use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    canonical_triple, conjugation, diagonal_switch, is_doubling_triple, perm_automorphism,
    psi_extension, restrict, AutError, DoublingTriple, LinearMap, LoopAutomorphism, Permutation,
    Provenance, S3_PERMUTATIONS,
};
use crate::loops::{named, LoopKind, LoopTable};
use crate::scalar::FiniteField;
use crate::zorn::{Cayley, OctonionAlgebra, Zorn};
use crate::{DEFAULT_SAMPLES, DEFAULT_SEED};

/// The linear automorphism of the algebra behind a loop automorphism `g` of
/// M*(2): `psi` from the canonical triple onto its image under `g`, checked to
/// restrict back to `g`.
pub fn extend_loop_automorphism<F: FiniteField>(
    g: &Permutation,
    t: &LoopTable<Zorn<F>>,
) -> Result<LinearMap<F>, AutError> {
    if F::ORDER != 2 {
        return Err(AutError::RequiresQ2);
    }
    if g.len() != t.len() {
        return Err(AutError::InvalidPermutation(t.len()));
    }
    let src = canonical_triple::<F>()?;
    let image = |x| {
        let i = t.lookup(&x).expect("canonical triple lies in the loop");
        *t.element(g.apply(i))
    };
    let dst = DoublingTriple::new(image(src.a), image(src.b), image(src.c));
    if !is_doubling_triple::<Zorn<F>>(&dst.a, &dst.b, &dst.c) {
        return Err(AutError::NotDoublingTriple(format!(
            "image ({}, {}, {}) of the canonical triple",
            dst.a, dst.b, dst.c
        )));
    }
    let h = psi_extension::<Zorn<F>>(&src, &dst)?;
    let back = restrict(&h, t)?;
    if let Some(i) = (0..t.len() as u32).find(|&i| back.apply(i) != g.apply(i)) {
        return Err(AutError::ExtensionMismatch(t.element(i).to_string()));
    }
    Ok(h)
}

/// The linear map taking each unit `e_i` of the compact model to `g(e_i)`,
/// for an automorphism `g` of the full unit sphere in odd characteristic.
/// Exact check on basis pairs, then a seeded check on random algebra pairs.
pub fn linear_extension_odd<F: FiniteField>(
    g: &Permutation,
    t: &LoopTable<Cayley<F>>,
) -> Result<LinearMap<F>, AutError> {
    if F::characteristic() == 2 {
        return Err(AutError::RequiresOddCharacteristic);
    }
    if t.kind() != LoopKind::Sphere {
        return Err(AutError::Precondition(
            "needs the unit sphere, not the quotient".into(),
        ));
    }
    if g.len() != t.len() {
        return Err(AutError::InvalidPermutation(t.len()));
    }
    let columns = std::array::from_fn(|i| {
        let ei = Cayley::<F>::basis(i);
        let k = t.lookup(&ei).expect("basis units have norm one");
        Cayley::<F>::coords(t.element(g.apply(k)))
    });
    let h = LinearMap::from_columns(columns);
    if let Some((x, y)) = h.multiplicativity_witness::<Cayley<F>>() {
        return Err(AutError::not_multiplicative(x, y));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut draw = || {
        Cayley::<F>::from_coords(std::array::from_fn(|_| {
            F::from_index(rng.gen_range(0..F::ORDER)).expect("index below q")
        }))
    };
    for _ in 0..DEFAULT_SAMPLES {
        let (x, y) = (draw(), draw());
        let hx = h.apply::<Cayley<F>>(&x);
        let hy = h.apply::<Cayley<F>>(&y);
        if h.apply::<Cayley<F>>(&(x * y)) != hx * hy {
            return Err(AutError::not_multiplicative(x, y));
        }
    }
    Ok(h)
}

/// Generators of Aut(M*(2)) built from the explicit constructions: the six
/// signed permutations, the diagonal switch and the conjugations by `v1`,
/// `v2` and `y`, in that order.
pub fn standard_generators<F: FiniteField>(
    t: &LoopTable<Zorn<F>>,
) -> Result<Vec<LoopAutomorphism<F>>, AutError> {
    if F::ORDER != 2 {
        return Err(AutError::RequiresQ2);
    }
    let mut gens = Vec::new();
    for pi in S3_PERMUTATIONS {
        let h = perm_automorphism::<F>(pi)?;
        gens.push(LoopAutomorphism {
            perm: restrict(&h, t)?,
            provenance: Provenance::Perm,
            label: format!("-pi[{}{}{}]", pi[0] + 1, pi[1] + 1, pi[2] + 1),
            linear: Some(h),
        });
    }
    let s = diagonal_switch::<F>()?;
    gens.push(LoopAutomorphism {
        perm: restrict(&s, t)?,
        provenance: Provenance::Switch,
        label: "sigma".into(),
        linear: Some(s),
    });
    for (label, text) in [
        ("T[v1]", named::V1),
        ("T[v2]", named::V2),
        ("T[y]", named::Y),
    ] {
        let x: crate::zorn::Octonion<F> = text.parse()?;
        debug_assert!(x.norm().is_one());
        let i = t
            .lookup(&x)
            .ok_or_else(|| AutError::Precondition(format!("{text} is not in the loop")))?;
        let mut g = conjugation(t, i)?;
        g.label = label.into();
        gens.push(g);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{conjugation, PermGroup};
    use crate::gf::Gf;

    type Z2 = Zorn<Gf<2>>;

    #[test]
    fn identity_and_switch_extend() {
        let t = LoopTable::<Z2>::paige().unwrap();
        let id = Permutation::identity(t.len());
        assert_eq!(extend_loop_automorphism(&id, &t), Ok(LinearMap::identity()));
        let s = diagonal_switch::<Gf<2>>().unwrap();
        let g = restrict(&s, &t).unwrap();
        assert_eq!(extend_loop_automorphism(&g, &t), Ok(s));
    }

    #[test]
    fn non_automorphism_does_not_extend() {
        let t = LoopTable::<Z2>::paige().unwrap();
        let mut images: Vec<u32> = (0..t.len() as u32).collect();
        images.swap(1, 2);
        let g = Permutation::from_images(images).unwrap();
        assert!(extend_loop_automorphism(&g, &t).is_err());
        let t3 = LoopTable::<Zorn<Gf<3>>>::paige().unwrap();
        let id = Permutation::identity(t3.len());
        assert_eq!(
            extend_loop_automorphism(&id, &t3),
            Err(AutError::RequiresQ2)
        );
    }

    #[test]
    fn generators_close_to_12096() {
        let t = LoopTable::<Z2>::paige().unwrap();
        let gens = standard_generators(&t).unwrap();
        assert_eq!(gens.len(), 10);
        let group = PermGroup::closure(&t, &gens).unwrap();
        assert_eq!(group.order(), 12096);
    }

    #[test]
    fn odd_extension_of_a_conjugation() {
        let t = LoopTable::<Cayley<Gf<3>>>::sphere().unwrap();
        let id = Permutation::identity(t.len());
        assert_eq!(linear_extension_odd(&id, &t), Ok(LinearMap::identity()));
        let x = (1..t.len() as u32)
            .find(|&i| t.pow(i, 3) == 0)
            .expect("the sphere has elements of order 3");
        let g = conjugation(&t, x).unwrap();
        let h = linear_extension_odd(&g.perm, &t).unwrap();
        assert_ne!(h, LinearMap::identity());
        for i in 0..8 {
            let ei = Cayley::<Gf<3>>::basis(i);
            let k = t.lookup(&ei).unwrap();
            assert_eq!(h.apply::<Cayley<Gf<3>>>(&ei), *t.element(g.perm.apply(k)));
        }
        let q = LoopTable::<Cayley<Gf<3>>>::paige().unwrap();
        let id = Permutation::identity(q.len());
        assert!(matches!(
            linear_extension_odd(&id, &q),
            Err(AutError::Precondition(_))
        ));
    }
}
