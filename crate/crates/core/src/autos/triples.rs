use num_traits::Zero;

use super::{AutError, LinearMap};
use crate::loops::{LoopTable, PairKind};
use crate::scalar::{FiniteField, Scalar};
use crate::zorn::{Octonion, OctonionAlgebra, Vec3, Zorn};

/// Three elements `(a, b, c)`, a doubling triple when [`is_doubling_triple`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoublingTriple<E> {
    pub a: E,
    pub b: E,
    pub c: E,
}

impl<E> DoublingTriple<E> {
    pub fn new(a: E, b: E, c: E) -> Self {
        DoublingTriple { a, b, c }
    }
}

/// `{e, a, b, ab, c, ac, bc, (ab)c}`.
pub fn triple_basis<A: OctonionAlgebra>(t: &DoublingTriple<A::Elem>) -> [A::Elem; 8] {
    let (a, b, c) = (t.a, t.b, t.c);
    let ab = a * b;
    [A::one(), a, b, ab, c, a * c, b * c, ab * c]
}

fn basis_rank<A: OctonionAlgebra>(t: &DoublingTriple<A::Elem>) -> usize {
    super::rank(triple_basis::<A>(t).iter().map(A::coords).collect())
}

pub fn is_doubling_triple<A: OctonionAlgebra>(a: &A::Elem, b: &A::Elem, c: &A::Elem) -> bool {
    let e = A::one();
    let perp = |x: &A::Elem, y: &A::Elem| A::bilinear(x, y).is_zero();
    let even = A::Scalar::characteristic() == 2;
    let ab = *a * *b;
    let ok = [a, b, c].iter().all(|x| !A::norm(x).is_zero())
        && perp(a, &e) != even
        && perp(b, &e)
        && perp(b, a)
        && perp(c, &e)
        && perp(c, a)
        && perp(c, b)
        && perp(c, &ab);
    ok && basis_rank::<A>(&DoublingTriple::new(*a, *b, *c)) == 8
}

/// The triple conditions for unit-norm elements, phrased with products only.
pub fn multiplicative_triple_test<A: OctonionAlgebra>(
    a: &A::Elem,
    b: &A::Elem,
    c: &A::Elem,
) -> bool {
    let e = A::one();
    let minus_e = -e;
    let inv = A::conjugate;
    let sq = |x: A::Elem| x * x;
    let ab = *a * *b;
    let a_ok = if A::Scalar::characteristic() == 2 {
        *a != e && sq(*a) * *a == e
    } else {
        sq(*a) == minus_e
    };
    a_ok && [*b, *c, *a * inv(b), *a * inv(c), *b * inv(c), ab * inv(c)]
        .into_iter()
        .all(|x| sq(x) == minus_e)
}

/// The fixed even-characteristic triple `(0,100,100,1), (0,010,010,0), (0,001,001,0)`.
pub fn canonical_triple<F: FiniteField>() -> Result<DoublingTriple<Octonion<F>>, AutError> {
    if F::characteristic() != 2 {
        return Err(AutError::RequiresEvenCharacteristic);
    }
    let (zero, one) = (F::zero(), F::one());
    let slot = |i| Vec3::<F>::unit(i);
    Ok(DoublingTriple::new(
        Octonion::new(zero, slot(0), slot(0), one),
        Octonion::new(zero, slot(1), slot(1), zero),
        Octonion::new(zero, slot(2), slot(2), zero),
    ))
}

/// The automorphism sending `src` to `dst`, given on the induced bases.
pub fn psi_extension<A: OctonionAlgebra>(
    src: &DoublingTriple<A::Elem>,
    dst: &DoublingTriple<A::Elem>,
) -> Result<LinearMap<A::Scalar>, AutError> {
    for (slot, x, y) in [
        ("a", &src.a, &dst.a),
        ("b", &src.b, &dst.b),
        ("c", &src.c, &dst.c),
    ] {
        if A::norm(x) != A::norm(y) {
            return Err(AutError::NormMismatch(slot));
        }
    }
    for t in [src, dst] {
        if !is_doubling_triple::<A>(&t.a, &t.b, &t.c) {
            return Err(AutError::NotDoublingTriple(format!(
                "({}, {}, {})",
                t.a, t.b, t.c
            )));
        }
    }
    let columns = |t| LinearMap::from_columns(triple_basis::<A>(t).map(|x| A::coords(&x)));
    let from = columns(src).inverse().ok_or(AutError::Singular)?;
    let h = columns(dst).compose(&from);
    if let Some((x, y)) = h.multiplicativity_witness::<A>() {
        return Err(AutError::not_multiplicative(x, y));
    }
    if let Some((x, y)) = h.isometry_witness::<A>() {
        return Err(AutError::NotIsometry {
            x: x.to_string(),
            y: y.to_string(),
        });
    }
    Ok(h)
}

/// Every unit-norm doubling triple of M*(2), as loop indices in
/// lexicographic order.
///
/// `a` runs over the elements of order 3 (exactly those outside `e^⊥`), `b`
/// over involutions orthogonal to `a`, and `c` over involutions commuting
/// with `b` (the dot-product test) and orthogonal to `a` and `ab`.
pub fn doubling_triple_census<F: FiniteField>(
    t: &LoopTable<Zorn<F>>,
) -> Result<Vec<[u32; 3]>, AutError> {
    if F::ORDER != 2 {
        return Err(AutError::RequiresQ2);
    }
    let perp = |i: u32, j: u32| t.element(i).bilinear(t.element(j)).is_zero();
    let invs = t.involutions();
    let mut out = Vec::new();
    for a in t.elements_of_order(3) {
        for &b in invs.iter().filter(|&&b| perp(a, b)) {
            let ab = t.mul(a, b);
            for &c in &invs {
                if c == b || !perp(c, a) || !perp(c, ab) {
                    continue;
                }
                if t.involution_pair_classify(b, c)? != PairKind::V4 {
                    continue;
                }
                let (x, y, z) = (t.element(a), t.element(b), t.element(c));
                if is_doubling_triple::<Zorn<F>>(x, y, z) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}
