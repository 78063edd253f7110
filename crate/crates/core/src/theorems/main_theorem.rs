use std::collections::{BTreeSet, HashMap};

use rand::Rng;

use super::{AutContext, Check, CheckReport, SuiteConfig};
use crate::autos::{
    audit_all_pairs, canonical_triple, doubling_triple_census, extend_loop_automorphism,
    is_doubling_triple, multiplicative_triple_test, psi_extension, restrict, triple_basis,
    DoublingTriple, LinearMap, Permutation,
};
use crate::zorn::Zorn;
use crate::Gf2;

/// The published order of G2(2), used only as a cross-reference.
pub const G2_2_ORDER: usize = 12096;

/// Census triples whose images are checked for each group element, besides
/// the canonical one.
const TRIPLES_PER_ELEMENT: usize = 4;

type Z2 = Zorn<Gf2>;

/// Outcome of the extension pipeline on M*(2).
#[derive(Debug, Clone)]
pub struct MainTheorem {
    /// One report per step, then the aggregate `main-theorem` report.
    pub checks: Vec<CheckReport>,
    pub doubling_triple_count: usize,
    pub aut_order: usize,
    pub distinct_restrictions: usize,
    pub extensions: usize,
    /// Order of the subloop generated by the canonical basis. Informational.
    pub basis_subloop_order: usize,
}

impl MainTheorem {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

pub fn verify_main_theorem(ctx: &AutContext, cfg: &SuiteConfig) -> MainTheorem {
    let t = &ctx.table;
    let group = &ctx.group;
    let mut checks = Vec::new();
    let src = canonical_triple::<Gf2>().expect("characteristic 2");
    let element = |i: u32| *t.element(i);
    let triple_of = |k: &[u32; 3]| DoublingTriple::new(element(k[0]), element(k[1]), element(k[2]));

    // one map per unit-norm doubling triple
    let mut census = Check::new("triple-census");
    let triples = match doubling_triple_census::<Gf2>(t) {
        Ok(v) => v,
        Err(e) => {
            census.fail(e.to_string());
            Vec::new()
        }
    };
    for k in &triples {
        let d = triple_of(k);
        census.record(multiplicative_triple_test::<Z2>(&d.a, &d.b, &d.c), || {
            format!("({}, {}, {})", d.a, d.b, d.c)
        });
    }
    census.record(triples.len() == G2_2_ORDER, || {
        format!("{} triples, expected {G2_2_ORDER}", triples.len())
    });
    checks.push(census.finish());

    let src_idx = [src.a, src.b, src.c].map(|x| t.lookup(&x).expect("canonical triple is unit"));
    let mut psi = Check::new("psi-extensions");
    let mut by_perm: HashMap<Permutation, LinearMap<Gf2>> = HashMap::new();
    let mut restrictions = Vec::with_capacity(triples.len());
    let mut matrices = BTreeSet::new();
    for k in &triples {
        let dst = triple_of(k);
        let outcome = psi_extension::<Z2>(&src, &dst).and_then(|h| Ok((h, restrict(&h, t)?)));
        match outcome {
            Ok((h, p)) => {
                let sends = src_idx.iter().zip(k).all(|(&s, &d)| p.apply(s) == d);
                let audited = audit_all_pairs(t, &p).is_none();
                psi.record(sends && audited, || {
                    format!("triple {:?}: sends={sends} audited={audited}", k)
                });
                matrices.insert(h.to_indices());
                by_perm.insert(p.clone(), h);
                restrictions.push(p);
            }
            Err(e) => psi.record(false, || format!("triple {k:?}: {e}")),
        }
    }
    psi.record(matrices.len() == triples.len(), || {
        format!(
            "{} distinct matrices for {} triples",
            matrices.len(),
            triples.len()
        )
    });
    checks.push(psi.finish());

    let mut distinct = Check::new("restrictions-distinct");
    let mut sorted = restrictions.clone();
    sorted.sort();
    sorted.dedup();
    let distinct_restrictions = sorted.len();
    distinct.record(distinct_restrictions == restrictions.len(), || {
        format!(
            "{} distinct of {}",
            distinct_restrictions,
            restrictions.len()
        )
    });
    checks.push(distinct.finish());

    let mut closure = Check::new("closure-equality");
    let mut closed: Vec<Permutation> = group.elements().to_vec();
    closed.sort();
    closure.record(group.order() == triples.len(), || {
        format!(
            "closure order {} vs {} triples",
            group.order(),
            triples.len()
        )
    });
    closure.record(closed == sorted, || {
        "closure and restrictions differ as sets".into()
    });
    checks.push(closure.finish());

    // every group element extends, uniquely, and restricts back to itself
    let mut extend = Check::new("extension-roundtrip");
    let mut extensions = 0;
    for g in group.elements() {
        match extend_loop_automorphism::<Gf2>(g, t) {
            Ok(h) => {
                extensions += 1;
                let same = by_perm.get(g) == Some(&h);
                extend.record(same, || {
                    format!("extension of {:?} differs from psi", g.images())
                });
            }
            Err(e) => extend.record(false, || e.to_string()),
        }
    }
    checks.push(extend.finish());

    let mut preserve = Check::new("triple-preservation");
    let mut rng = cfg.rng();
    for g in group.elements() {
        let image = |k: &[u32; 3]| triple_of(&k.map(|i| g.apply(i)));
        let mut picks = vec![src_idx];
        if !triples.is_empty() {
            picks
                .extend((0..TRIPLES_PER_ELEMENT).map(|_| triples[rng.gen_range(0..triples.len())]));
        }
        for k in &picks {
            let d = image(k);
            preserve.record(is_doubling_triple::<Z2>(&d.a, &d.b, &d.c), || {
                format!("image of {k:?} under {:?}", g.images())
            });
        }
    }
    checks.push(preserve.finish());

    // g -> g(canonical triple) is a bijection onto the census
    let mut regular = Check::new("regularity");
    let images: BTreeSet<[u32; 3]> = group
        .elements()
        .iter()
        .map(|g| src_idx.map(|i| g.apply(i)))
        .collect();
    regular.record(images.len() == group.order(), || {
        format!("{} images for {} elements", images.len(), group.order())
    });
    let census_set: BTreeSet<[u32; 3]> = triples.iter().copied().collect();
    regular.record(images == census_set, || {
        "images differ from the census".into()
    });
    checks.push(regular.finish());

    let basis: Vec<u32> = triple_basis::<Z2>(&src)
        .iter()
        .map(|x| t.lookup(x).expect("basis of unit elements"))
        .collect();
    let basis_subloop_order = t.subgroup_generate(&basis).order();

    let mut overall = Check::new("main-theorem");
    let counts = [
        triples.len(),
        group.order(),
        distinct_restrictions,
        extensions,
    ];
    overall.record(checks.iter().all(CheckReport::passed), || {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        format!("failed steps: {}", failed.join(", "))
    });
    overall.record(counts.iter().all(|&n| n == G2_2_ORDER), || {
        format!("triples, closure, restrictions, extensions = {counts:?}")
    });
    checks.push(overall.finish());

    MainTheorem {
        checks,
        doubling_triple_count: triples.len(),
        aut_order: group.order(),
        distinct_restrictions,
        extensions,
        basis_subloop_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_at_q2() {
        let ctx = AutContext::build().unwrap();
        let m = verify_main_theorem(&ctx, &SuiteConfig::default());
        for c in &m.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(m.doubling_triple_count, 12096);
        assert_eq!(m.aut_order, 12096);
        assert_eq!(m.distinct_restrictions, 12096);
        assert_eq!(m.extensions, 12096);
        assert!(m.basis_subloop_order <= 120);
    }
}
