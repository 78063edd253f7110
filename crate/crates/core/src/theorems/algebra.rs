use rayon::prelude::*;

use super::{random_element, random_unit, Check, CheckReport, SuiteConfig};
use crate::scalar::FiniteField;
use crate::zorn::{decompose_norm_one, unit_sphere, Cayley, Octonion, OctonionAlgebra, Zorn};

/// Fields small enough to walk every element (and every pair) of the algebra.
fn exhaustive<F: FiniteField>() -> bool {
    F::ORDER <= 3
}

fn elements<F: FiniteField>(cfg: &SuiteConfig) -> Vec<Octonion<F>> {
    if exhaustive::<F>() {
        Octonion::all().collect()
    } else {
        let mut rng = cfg.rng();
        (0..cfg.samples)
            .map(|_| random_element::<Zorn<F>>(&mut rng))
            .collect()
    }
}

fn pairs_text<F: FiniteField>(x: &Octonion<F>, y: &Octonion<F>) -> String {
    format!("x={x} y={y}")
}

/// `N(xy) = N(x) N(y)`: every pair for q <= 3, sampled otherwise. In odd
/// characteristic the compact model is checked as well.
pub fn composition<F: FiniteField>(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut c = Check::new("composition");
    if exhaustive::<F>() {
        let all: Vec<Octonion<F>> = Octonion::all().collect();
        for x in &all {
            for y in &all {
                c.record((*x * *y).norm() == x.norm() * y.norm(), || pairs_text(x, y));
            }
        }
    } else {
        let mut rng = cfg.rng();
        for _ in 0..cfg.samples {
            let x = random_element::<Zorn<F>>(&mut rng);
            let y = random_element::<Zorn<F>>(&mut rng);
            c.record((x * y).norm() == x.norm() * y.norm(), || pairs_text(&x, &y));
        }
    }
    out.push(c.finish());
    if F::characteristic() != 2 {
        let mut c = Check::new("composition-cayley");
        let mut rng = cfg.rng();
        for _ in 0..cfg.samples {
            let x = random_element::<Cayley<F>>(&mut rng);
            let y = random_element::<Cayley<F>>(&mut rng);
            let ok = (x * y).norm() == x.norm() * y.norm()
                && Cayley::<F>::conjugate(&x) * x
                    == Cayley::<F>::scale(&Cayley::<F>::one(), x.norm());
            c.record(ok, || format!("x={x} y={y}"));
        }
        out.push(c.finish());
    }
    out
}

/// All three Moufang identities. At q = 2 every triple is checked through a
/// 256 x 256 product table; otherwise `cfg.samples` seeded triples.
pub fn moufang<F: FiniteField>(cfg: &SuiteConfig) -> CheckReport {
    let mut c = Check::new("moufang");
    if F::ORDER == 2 {
        let all: Vec<Octonion<F>> = Octonion::all().collect();
        let n = all.len();
        let table: Vec<u8> = (0..n * n)
            .map(|k| (all[k / n] * all[k % n]).key() as u8)
            .collect();
        let m = |x: u8, y: u8| table[x as usize * n + y as usize];
        let failures: Vec<(u8, u8, u8)> = (0..n as u32)
            .into_par_iter()
            .flat_map_iter(|x| {
                let x = x as u8;
                (0..=255u8).flat_map(move |y| {
                    (0..=255u8).filter_map(move |z| {
                        let ok = m(m(x, y), m(z, x)) == m(x, m(m(y, z), x))
                            && m(x, m(y, m(x, z))) == m(m(m(x, y), x), z)
                            && m(x, m(y, m(z, y))) == m(m(m(x, y), z), y);
                        (!ok).then_some((x, y, z))
                    })
                })
            })
            .collect();
        c.add_cases((n * n * n) as u64);
        for (x, y, z) in failures {
            c.fail(format!(
                "x={} y={} z={}",
                all[x as usize], all[y as usize], all[z as usize]
            ));
        }
    } else {
        let mut rng = cfg.rng();
        for _ in 0..cfg.samples {
            let x = random_element::<Zorn<F>>(&mut rng);
            let y = random_element::<Zorn<F>>(&mut rng);
            let z = random_element::<Zorn<F>>(&mut rng);
            let ok = Octonion::moufang_residuals(&x, &y, &z)
                .iter()
                .all(Octonion::is_zero);
            c.record(ok, || format!("x={x} y={y} z={z}"));
        }
    }
    c.finish()
}

/// The minimal equation, then the bilinear identities
/// `<xy, y> = <x, e> N(y)` and the minimal equation of `xy^{-1}` written with
/// `<x, y>`, and finally `(xy^{-1})^2 = -e` iff `x ⊥ y` for unit `x, y`.
pub fn minimal_equation<F: FiniteField>(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let xs = elements::<F>(cfg);
    let mut minimal = Check::new("minimal-equation");
    for x in &xs {
        minimal.record(x.minimal_eq_residual().is_zero(), || x.to_string());
    }
    let mut product = Check::new("bilinear-product");
    let mut quotient = Check::new("quotient-minimal-equation");
    if exhaustive::<F>() {
        let n = xs.len();
        let bad: Vec<(usize, usize, PairOutcome)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let xs = &xs;
                (0..n).filter_map(move |j| {
                    let r = bilinear_pair(&xs[i], &xs[j]);
                    (!r.passed()).then_some((i, j, r))
                })
            })
            .collect();
        product.add_cases((n * n) as u64);
        let invertible = xs.iter().filter(|y| !y.norm().is_zero()).count();
        quotient.add_cases((invertible * n) as u64);
        for (i, j, r) in bad {
            let text = pairs_text(&xs[i], &xs[j]);
            if !r.product {
                product.fail(text.clone());
            }
            if r.quotient == Some(false) {
                quotient.fail(text);
            }
        }
    } else {
        let mut rng = cfg.rng();
        for x in &xs {
            let y = random_element::<Zorn<F>>(&mut rng);
            let r = bilinear_pair(x, &y);
            product.record(r.product, || pairs_text(x, &y));
            if let Some(q) = r.quotient {
                quotient.record(q, || pairs_text(x, &y));
            }
        }
    }
    vec![
        minimal.finish(),
        product.finish(),
        quotient.finish(),
        perpendicular_squares::<F>(cfg),
    ]
}

#[derive(Debug, Clone, Copy)]
struct PairOutcome {
    product: bool,
    /// `None` when `y` is not invertible.
    quotient: Option<bool>,
}

impl PairOutcome {
    fn passed(&self) -> bool {
        self.product && self.quotient != Some(false)
    }
}

fn bilinear_pair<F: FiniteField>(x: &Octonion<F>, y: &Octonion<F>) -> PairOutcome {
    let e = Octonion::<F>::identity();
    let product = (*x * *y).bilinear(y) == x.bilinear(&e) * y.norm();
    let quotient = y.norm().try_inv().map(|ninv| {
        let z = *x * y.conjugate().scale(ninv);
        (z * z - z.scale(x.bilinear(y) * ninv) + Octonion::scalar(z.norm())).is_zero()
    });
    PairOutcome { product, quotient }
}

/// Every pair of units for q <= 3, seeded pairs otherwise.
fn unit_pairs_of<F: FiniteField>(
    cfg: &SuiteConfig,
) -> Box<dyn Iterator<Item = (Octonion<F>, Octonion<F>)>> {
    if exhaustive::<F>() {
        let sphere = std::rc::Rc::new(unit_sphere::<Zorn<F>>());
        let n = sphere.len();
        Box::new((0..n * n).map(move |k| (sphere[k / n], sphere[k % n])))
    } else {
        let mut rng = cfg.rng();
        Box::new((0..cfg.samples).map(move |_| {
            (
                random_unit::<Zorn<F>>(&mut rng),
                random_unit::<Zorn<F>>(&mut rng),
            )
        }))
    }
}

fn perpendicular_squares<F: FiniteField>(cfg: &SuiteConfig) -> CheckReport {
    let mut c = Check::new("perpendicular-square");
    let minus_e = -Octonion::<F>::identity();
    let mut check = |x: &Octonion<F>, y: &Octonion<F>| {
        let z = *x * y.conjugate();
        c.record((z * z == minus_e) == x.bilinear(y).is_zero(), || {
            pairs_text(x, y)
        });
    };
    for (x, y) in unit_pairs_of::<F>(cfg) {
        check(&x, &y);
    }
    c.finish()
}

/// For unit `x != y`: `|xy^{-1}| = 3`, `(xy^{-1})^2 + xy^{-1} + e = 0`,
/// `<x, y> = -1` and `N(x + y) = 1` agree, and `N(x + y) = 1` iff
/// `x + y = -x y^{-1} x`. Every pair for q <= 3, sampled otherwise.
pub fn unit_pairs<F: FiniteField>(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let e = Octonion::<F>::identity();
    let one = F::one();
    let mut equiv = Check::new("unit-pair-equivalence");
    let mut additive = Check::new("additive-identity");
    for (x, y) in unit_pairs_of::<F>(cfg) {
        if x == y {
            continue;
        }
        let z = x * y.conjugate();
        let z2 = z * z;
        let order3 = z != e && z2 != e && z2 * z == e;
        let cubic = (z2 + z + e).is_zero();
        let bilinear = x.bilinear(&y) == -one;
        let norm = (x + y).norm() == one;
        equiv.record(
            order3 == cubic && cubic == bilinear && bilinear == norm,
            || {
                format!(
                    "{} [{order3} {cubic} {bilinear} {norm}]",
                    pairs_text(&x, &y)
                )
            },
        );
        let identity = x + y == -(z * x);
        additive.record(norm == identity, || pairs_text(&x, &y));
    }
    vec![equiv.finish(), additive.finish()]
}

/// The closed-form order flags against repeated multiplication, on every
/// unit element for q <= 3 and on sampled units above.
pub fn order_criteria<F: FiniteField>(cfg: &SuiteConfig) -> CheckReport {
    let mut c = Check::new("order-criteria");
    let units = if exhaustive::<F>() {
        unit_sphere::<Zorn<F>>()
    } else {
        let mut rng = cfg.rng();
        (0..cfg.samples)
            .map(|_| random_unit::<Zorn<F>>(&mut rng))
            .collect()
    };
    let e = Octonion::<F>::identity();
    for x in units {
        let Ok(p) = x.order_predicates() else {
            c.fail(x.to_string());
            continue;
        };
        let (x2, x3) = (x * x, x * x * x);
        let ok = p.square_identity == (x2 == e)
            && p.square_neg_identity == (x2 == -e)
            && p.cube_identity == (x3 == e)
            && p.cube_neg_identity == (x3 == -e);
        c.record(ok, || format!("{x} {p:?}"));
    }
    c.finish()
}

/// Every element (q <= 3) or sampled elements split as a sum of two units.
pub fn sums_of_two<F: FiniteField>(cfg: &SuiteConfig) -> CheckReport {
    let mut c = Check::new("sums-of-two");
    let one = F::one();
    for x in elements::<F>(cfg) {
        let (u, v) = decompose_norm_one(&x);
        c.record(u.norm() == one && v.norm() == one && u + v == x, || {
            format!("{x} -> {u} + {v}")
        });
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: 2000,
            ..SuiteConfig::default()
        }
    }

    fn all_pass(reports: &[CheckReport]) {
        for r in reports {
            assert!(r.passed(), "{r:?}");
            assert!(r.cases > 0, "{r:?}");
        }
    }

    #[test]
    fn suites_pass_at_q2() {
        all_pass(&composition::<Gf<2>>(&small()));
        all_pass(&minimal_equation::<Gf<2>>(&small()));
        all_pass(&unit_pairs::<Gf<2>>(&small()));
        all_pass(&[
            order_criteria::<Gf<2>>(&small()),
            sums_of_two::<Gf<2>>(&small()),
        ]);
    }

    #[test]
    fn sampled_suites_pass_at_larger_q() {
        all_pass(&composition::<Gf<9>>(&small()));
        all_pass(&minimal_equation::<Gf<5>>(&small()));
        all_pass(&unit_pairs::<Gf<7>>(&small()));
        all_pass(&[
            moufang::<Gf<4>>(&small()),
            moufang::<Gf<3>>(&small()),
            order_criteria::<Gf<8>>(&small()),
            sums_of_two::<Gf<9>>(&small()),
        ]);
    }

    #[test]
    fn exhaustive_counts() {
        let r = unit_pairs::<Gf<2>>(&small());
        assert_eq!(r[0].cases, 120 * 119);
        assert_eq!(order_criteria::<Gf<3>>(&small()).cases, 2160);
        assert_eq!(sums_of_two::<Gf<3>>(&small()).cases, 6561);
    }

    #[test]
    fn same_seed_same_report() {
        let a = unit_pairs::<Gf<5>>(&small());
        let b = unit_pairs::<Gf<5>>(&small());
        assert_eq!(
            a.iter().map(|r| r.cases).collect::<Vec<_>>(),
            b.iter().map(|r| r.cases).collect::<Vec<_>>()
        );
    }
}
