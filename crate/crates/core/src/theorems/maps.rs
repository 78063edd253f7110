use super::{random_element, Check, CheckReport, SuiteConfig};
use crate::autos::{
    audit_all_pairs, audit_sampled, conjugation, conjugation_unchecked, diagonal_switch, is_even,
    perm_automorphism, signed_perm_automorphism, AutError, LinearMap, S3_PERMUTATIONS,
};
use crate::gf::Gf;
use crate::loops::named::{self, named};
use crate::loops::LoopTable;
use crate::scalar::FiniteField;
use crate::zorn::{Octonion, Zorn};

/// Exhaustive at q = 2; otherwise the exact basis audit plus seeded pairs.
fn audit_linear<F: FiniteField>(h: &LinearMap<F>, cfg: &SuiteConfig, c: &mut Check, label: &str) {
    if F::ORDER == 2 {
        c.add_cases(1 << 16);
        if let Some((x, y)) = h.audit_all_pairs::<Zorn<F>>() {
            c.fail(format!("{label}: x={x} y={y}"));
        }
        return;
    }
    c.add_cases(64);
    if let Some((x, y)) = h.multiplicativity_witness::<Zorn<F>>() {
        c.fail(format!("{label}: x={x} y={y}"));
    }
    let mut rng = cfg.rng();
    for _ in 0..cfg.samples {
        let x: Octonion<F> = random_element::<Zorn<F>>(&mut rng);
        let y: Octonion<F> = random_element::<Zorn<F>>(&mut rng);
        let ok = h.apply::<Zorn<F>>(&(x * y)) == h.apply::<Zorn<F>>(&x) * h.apply::<Zorn<F>>(&y);
        c.record(ok, || format!("{label}: x={x} y={y}"));
    }
}

/// The explicit algebra automorphisms and, at q = 2 and q = 3, the
/// conjugation criterion.
pub fn automorphisms<F: FiniteField>(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let even = F::characteristic() == 2;

    let mut switch = Check::new(if even { "switch" } else { "switch-rejected" });
    match diagonal_switch::<F>() {
        Ok(s) if even => audit_linear(&s, cfg, &mut switch, "sigma"),
        Ok(_) => switch.record(false, || "switch accepted in odd characteristic".into()),
        Err(AutError::NotMultiplicative { x, y }) if !even => {
            let witness_fails = (|| {
                let (x, y): (Octonion<F>, Octonion<F>) = (x.parse().ok()?, y.parse().ok()?);
                let s = |u: Octonion<F>| Octonion::new(u.b, u.beta, u.alpha, u.a);
                Some(s(x * y) != s(x) * s(y))
            })();
            switch.record(witness_fails == Some(true), || {
                format!("bad witness x={x} y={y}")
            });
        }
        Err(e) => switch.record(false, || e.to_string()),
    }
    out.push(switch.finish());

    let mut minus = Check::new("minus-permutations");
    for pi in S3_PERMUTATIONS {
        let label = format!("-pi{pi:?}");
        match perm_automorphism::<F>(pi) {
            Ok(h) => {
                minus.record(even || !is_even(pi), || format!("{label} accepted"));
                audit_linear(&h, cfg, &mut minus, &label);
            }
            Err(e) => minus.record(!even && is_even(pi), || format!("{label}: {e}")),
        }
    }
    out.push(minus.finish());

    let mut signed = Check::new("signed-permutations");
    for pi in S3_PERMUTATIONS {
        let h = signed_perm_automorphism::<F>(pi);
        audit_linear(&h, cfg, &mut signed, &format!("sgn*pi{pi:?}"));
    }
    out.push(signed.finish());

    match F::ORDER {
        2 => out.push(conjugation_criterion::<F>(cfg, usize::MAX)),
        3 => out.push(conjugation_criterion::<F>(cfg, 4)),
        _ => {}
    }
    out
}

/// `T_x` is an automorphism iff `x^3 = e`. At q = 2 every `x` is tried with
/// the full pair audit; otherwise the first `per_class` elements with and
/// without `x^3 = e`, with the sampled audit.
fn conjugation_criterion<F: FiniteField>(cfg: &SuiteConfig, per_class: usize) -> CheckReport {
    let mut c = Check::new("conjugation-criterion");
    let t = match LoopTable::<Zorn<F>>::paige() {
        Ok(t) => t,
        Err(e) => {
            c.fail(e.to_string());
            return c.finish();
        }
    };
    let (mut cubes, mut others) = (0, 0);
    for x in 1..t.len() as u32 {
        let cube = t.pow(x, 3) == 0;
        let slot = if cube { &mut cubes } else { &mut others };
        if *slot >= per_class {
            continue;
        }
        *slot += 1;
        let perm = conjugation_unchecked(&t, x);
        let witness = if F::ORDER == 2 {
            audit_all_pairs(&t, &perm)
        } else {
            audit_sampled(&t, &perm, cfg.samples, cfg.seed)
        };
        c.record(witness.is_none() == cube, || {
            format!("x={} cube={cube} witness={witness:?}", t.element(x))
        });
    }
    c.finish()
}

/// A pair `(y, z)` with `T_x(yz) != T_x(y) T_x(z)`, searched over all pairs.
pub fn conjugation_witness(
    t: &LoopTable<Zorn<Gf<2>>>,
    x: u32,
) -> Option<(Octonion<Gf<2>>, Octonion<Gf<2>>)> {
    audit_all_pairs(t, &conjugation_unchecked(t, x)).map(|(i, j)| (*t.element(i), *t.element(j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdentity {
    pub label: &'static str,
    pub expected: String,
    pub actual: String,
}

impl NamedIdentity {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// The explicit identities for `T_y`, `f1 = T[v2^-1] ∘ T[v1]` and
/// `f2 = T[v1^-1] ∘ T[v2]` on M*(2).
#[derive(Debug, Clone)]
pub struct NamedMaps {
    pub identities: Vec<NamedIdentity>,
}

impl NamedMaps {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(NamedIdentity::holds)
    }

    pub fn reports(&self) -> Vec<CheckReport> {
        let mut c = Check::new("named-identities");
        for id in &self.identities {
            c.record(id.holds(), || {
                format!("{}: expected {} got {}", id.label, id.expected, id.actual)
            });
        }
        vec![c.finish()]
    }
}

pub fn named_maps() -> Result<NamedMaps, AutError> {
    let t = LoopTable::<Zorn<Gf<2>>>::paige()?;
    let idx = |text: &str| {
        t.lookup(&named(text))
            .ok_or_else(|| AutError::Precondition(format!("{text} is not in M*(2)")))
    };
    let (v1, v2) = (idx(named::V1)?, idx(named::V2)?);
    let t_y = conjugation(&t, idx(named::Y)?)?.perm;
    let f1 = conjugation(&t, t.inv(v2))?
        .perm
        .compose(&conjugation(&t, v1)?.perm);
    let f2 = conjugation(&t, t.inv(v1))?
        .perm
        .compose(&conjugation(&t, v2)?.perm);
    let sigma = diagonal_switch::<Gf<2>>()?;
    let sigma_u0 = sigma.apply::<Zorn<Gf<2>>>(&named(named::U0)).to_string();

    let text = |i: u32| t.element(i).to_string();
    let mut identities = Vec::new();
    let mut push = |label, expected: String, actual: String| {
        identities.push(NamedIdentity {
            label,
            expected,
            actual,
        })
    };
    push(
        "T_y(x1) = x0",
        named::X0.into(),
        text(t_y.apply(idx(named::X1)?)),
    );
    push(
        "f1(x0) = x0",
        named::X0.into(),
        text(f1.apply(idx(named::X0)?)),
    );
    push(
        "f2(x0) = x0",
        named::X0.into(),
        text(f2.apply(idx(named::X0)?)),
    );
    push(
        "f1(u4) = u1",
        named::U1.into(),
        text(f1.apply(idx(named::U4)?)),
    );
    push(
        "f1(u3) = u2",
        named::U2.into(),
        text(f1.apply(idx(named::U3)?)),
    );
    push(
        "f1(u5) = u3",
        named::U3.into(),
        text(f1.apply(idx(named::U5)?)),
    );
    push(
        "f2(u5) = sigma(u0)",
        sigma_u0,
        text(f2.apply(idx(named::U5)?)),
    );
    Ok(NamedMaps { identities })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_identities_hold() {
        let n = named_maps().unwrap();
        for id in &n.identities {
            assert!(id.holds(), "{id:?}");
        }
        assert_eq!(n.identities.len(), 7);
    }

    #[test]
    fn involution_conjugation_has_witness() {
        let t = LoopTable::<Zorn<Gf<2>>>::paige().unwrap();
        let x0 = t.lookup(&named(named::X0)).unwrap();
        let (y, z) = conjugation_witness(&t, x0).unwrap();
        let tx = |u: Octonion<Gf<2>>| {
            let xi = *t.element(x0);
            xi.conjugate() * u * xi
        };
        assert_ne!(tx(y * z), tx(y) * tx(z));
    }

    #[test]
    fn automorphism_suite_at_q2_and_q3() {
        let cfg = SuiteConfig {
            samples: 2000,
            ..SuiteConfig::default()
        };
        for r in automorphisms::<Gf<2>>(&cfg) {
            assert!(r.passed(), "{r:?}");
        }
        let reports = automorphisms::<Gf<3>>(&cfg);
        assert_eq!(reports[0].name, "switch-rejected");
        for r in reports {
            assert!(r.passed(), "{r:?}");
        }
        for r in automorphisms::<Gf<4>>(&cfg) {
            assert!(r.passed(), "{r:?}");
        }
    }
}
