use super::{Octonion, Vec3};
use crate::scalar::FiniteField;

fn first_vector<F: FiniteField>(pred: impl Fn(&Vec3<F>) -> bool) -> Vec3<F> {
    Vec3::all()
        .find(|v| pred(v))
        .expect("a nonzero linear functional takes every value")
}

/// Writes `x` as `u + v` with `N(u) = N(v) = 1`.
///
/// With `beta != 0`, `u = (1, gamma; delta, 1)` where `gamma` is the first
/// vector (in enumeration order) with `gamma.beta = a + b - ab + alpha.beta`
/// and `delta` the first vector orthogonal to both `gamma` and `alpha`. The
/// case `beta = 0 != alpha` is the mirror image, and `alpha = beta = 0` uses
/// the fixed split `(a, e1; -e1, 0) + (0, -e1; e1, b)`.
pub fn decompose_norm_one<F: FiniteField>(x: &Octonion<F>) -> (Octonion<F>, Octonion<F>) {
    let one = F::one();
    let Octonion { a, alpha, beta, b } = *x;
    let target = a + b - a * b + alpha.dot(&beta);
    let u = if !beta.is_zero() {
        let gamma = first_vector(|g| g.dot(&beta) == target);
        let delta = first_vector(|d| d.dot(&gamma).is_zero() && d.dot(&alpha).is_zero());
        Octonion::new(one, gamma, delta, one)
    } else if !alpha.is_zero() {
        let gamma = first_vector(|g| g.dot(&alpha) == target);
        let delta = first_vector(|d| d.dot(&gamma).is_zero() && d.dot(&beta).is_zero());
        Octonion::new(one, delta, gamma, one)
    } else {
        let e1 = Vec3::unit(0);
        let u = Octonion::new(a, e1, -e1, F::zero());
        return (u, *x - u);
    };
    (u, *x - u)
}
