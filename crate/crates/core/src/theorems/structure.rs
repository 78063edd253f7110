use std::collections::HashSet;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{random_unit, Check, CheckReport, SuiteConfig};
use crate::autos::{
    canonical_triple, diagonal_switch, orbits_on_points, orbits_on_sets, signed_perm_automorphism,
    standard_generators, triple_basis, AutError, LinearMap, LoopAutomorphism, PermGroup,
    Permutation, S3_PERMUTATIONS,
};
use crate::loops::named::{self, named};
use crate::loops::{LoopError, PairKind};
use crate::scalar::FiniteField;
use crate::zorn::{Octonion, Zorn};
use crate::{Gf2, PaigeLoop2};

/// Group members drawn, besides the generators, for the pair additivity check.
pub const ADDITIVITY_GROUP_SAMPLE: usize = 200;
/// Multi-summand instances in the additivity check.
pub const MULTI_SUMMAND_SAMPLES: usize = 10_000;
/// Largest number of summands drawn.
pub const MAX_SUMMANDS: usize = 8;

/// M*(2) with its standard generators and their closure.
#[derive(Debug)]
pub struct AutContext {
    pub table: PaigeLoop2,
    pub generators: Vec<LoopAutomorphism<Gf2>>,
    pub group: PermGroup,
}

impl AutContext {
    pub fn build() -> Result<Self, AutError> {
        let table = PaigeLoop2::paige()?;
        let generators = standard_generators::<Gf2>(&table)?;
        Self::from_generators(table, generators)
    }

    /// Audits `generators` against `table` and closes them.
    pub fn from_generators(
        table: PaigeLoop2,
        generators: Vec<LoopAutomorphism<Gf2>>,
    ) -> Result<Self, AutError> {
        let group = PermGroup::closure(&table, &generators)?;
        Ok(AutContext {
            table,
            generators,
            group,
        })
    }

    pub fn index(&self, text: &str) -> u32 {
        self.table
            .lookup(&named(text))
            .expect("named elements lie in M*(2)")
    }

    /// Generator labels for a word returned by [`PermGroup::word`].
    pub fn word_labels(&self, word: &[u32]) -> Vec<String> {
        word.iter()
            .map(|&k| self.generators[k as usize].label.clone())
            .collect()
    }
}

/// Orbits of Aut(M*(2)) on the involutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2Orbits {
    pub orbits: Vec<Vec<u32>>,
    /// `x0` when the orbit holds it, else the smallest index.
    pub representatives: Vec<u32>,
    /// Generator indices of a group element taking `x1` to `x0`, first acting first.
    pub word: Option<Vec<u32>>,
}

pub fn orbit_c2(ctx: &AutContext) -> C2Orbits {
    let t = &ctx.table;
    let orbits = orbits_on_points(ctx.group.generators(), &t.involutions());
    let x0 = ctx.index(named::X0);
    let representatives = orbits
        .iter()
        .map(|o| if o.contains(&x0) { x0 } else { o[0] })
        .collect();
    let word = ctx
        .group
        .find_mapping(ctx.index(named::X1), x0)
        .map(|i| ctx.group.word(i));
    C2Orbits {
        orbits,
        representatives,
        word,
    }
}

/// Orbits on the subgroups isomorphic to V4, and on generating pairs of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V4Orbits {
    pub orbits: Vec<Vec<Vec<u32>>>,
    /// `<x0, u1>` or `<x0, u2>` when the orbit holds one, else its first member.
    pub representatives: Vec<Vec<u32>>,
    /// Ordered pairs `(u, v)` with `<u, v> ~ V4`, up to the group action.
    pub pair_orbits: usize,
    /// Pair orbits holding neither `(x0, u1)` nor `(x0, u2)`.
    pub pair_orbits_missed: usize,
}

fn v4_of(t: &PaigeLoop2, x: u32, y: u32) -> Vec<u32> {
    let mut g = vec![0, x, y, t.mul(x, y)];
    g.sort_unstable();
    g
}

pub fn orbit_v4(ctx: &AutContext) -> Result<V4Orbits, LoopError> {
    let t = &ctx.table;
    let gens = ctx.group.generators();
    let sets: Vec<Vec<u32>> = t.klein_subgroups()?.iter().map(|s| s.to_vec()).collect();
    let orbits = orbits_on_sets(gens, &sets);
    let x0 = ctx.index(named::X0);
    let targets = [(x0, ctx.index(named::U1)), (x0, ctx.index(named::U2))];
    let named_sets: Vec<Vec<u32>> = targets.iter().map(|&(x, y)| v4_of(t, x, y)).collect();
    let representatives = orbits
        .iter()
        .map(|o| {
            named_sets
                .iter()
                .find(|s| o.contains(s))
                .unwrap_or(&o[0])
                .clone()
        })
        .collect();

    let mut pairs = Vec::new();
    for s in &sets {
        for &u in &s[1..] {
            for &v in &s[1..] {
                if u != v {
                    pairs.push((u, v));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let (mut pair_orbits, mut pair_orbits_missed) = (0, 0);
    for &p in &pairs {
        if !seen.insert(p) {
            continue;
        }
        pair_orbits += 1;
        let mut orbit = vec![p];
        let mut k = 0;
        while k < orbit.len() {
            let (u, v) = orbit[k];
            for g in gens {
                let image = (g.apply(u), g.apply(v));
                if seen.insert(image) {
                    orbit.push(image);
                }
            }
            k += 1;
        }
        if !targets.iter().any(|p| orbit.contains(p)) {
            pair_orbits_missed += 1;
        }
    }
    Ok(V4Orbits {
        orbits,
        representatives,
        pair_orbits,
        pair_orbits_missed,
    })
}

/// Applies a generator word, first index first.
fn apply_word(gens: &[Permutation], word: &[u32], x: u32) -> u32 {
    word.iter().fold(x, |acc, &k| gens[k as usize].apply(acc))
}

pub fn orbit_reports(ctx: &AutContext) -> Vec<CheckReport> {
    let t = &ctx.table;
    let gens = ctx.group.generators();

    let mut c2 = Check::new("c2-orbits");
    let o = orbit_c2(ctx);
    let sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
    c2.record(sizes == [63], || format!("orbit sizes {sizes:?}"));
    let x0 = ctx.index(named::X0);
    c2.record(o.representatives == [x0], || {
        format!("representatives {:?}", o.representatives)
    });
    let x1 = ctx.index(named::X1);
    c2.record(
        o.word
            .as_ref()
            .is_some_and(|w| apply_word(gens, w, x1) == x0),
        || format!("no word taking x1 to x0: {:?}", o.word),
    );
    c2.record(invariant(gens, &o.orbits), || "orbits not invariant".into());
    let mut reports = vec![c2.finish()];

    let mut v4 = Check::new("v4-orbits");
    match orbit_v4(ctx) {
        Ok(o) => {
            let sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
            let total = t.klein_subgroups().map(|k| k.len()).unwrap_or(0);
            v4.record(sizes.len() == 2, || format!("orbit sizes {sizes:?}"));
            v4.record(sizes.iter().sum::<usize>() == total, || {
                format!("orbit sizes {sizes:?} do not cover {total} subgroups")
            });
            let u1 = v4_of(t, x0, ctx.index(named::U1));
            let u2 = v4_of(t, x0, ctx.index(named::U2));
            let where_is = |s: &Vec<u32>| o.orbits.iter().position(|orb| orb.contains(s));
            v4.record(
                where_is(&u1).is_some() && where_is(&u1) != where_is(&u2),
                || "<x0,u1> and <x0,u2> share an orbit".into(),
            );
            v4.record(o.pair_orbits_missed == 0, || {
                format!(
                    "{} pair orbits miss (x0,u1) and (x0,u2)",
                    o.pair_orbits_missed
                )
            });
        }
        Err(e) => v4.fail(e.to_string()),
    }
    reports.push(v4.finish());
    reports
}

fn invariant(gens: &[Permutation], orbits: &[Vec<u32>]) -> bool {
    orbits.iter().all(|o| {
        gens.iter()
            .all(|g| o.iter().all(|&x| o.binary_search(&g.apply(x)).is_ok()))
    })
}

/// First element `a` of order 3 with `x + a` and `y + (e + a)` in M*(2).
pub fn shift_witness(t: &PaigeLoop2, x: u32, y: u32) -> Option<u32> {
    let e = Octonion::<Gf2>::identity();
    let (xe, ye) = (*t.element(x), *t.element(y));
    t.elements_of_order(3).into_iter().find(|&a| {
        let ae = *t.element(a);
        t.lookup(&(xe + ae)).is_some() && t.lookup(&(ye + e + ae)).is_some()
    })
}

/// Pairs of distinct elements with none of `x + e`, `y + e`, `x + y` in the loop
/// generate V4 and admit a shift witness; also the two explicit witnesses.
pub fn verify_shift_pairs() -> CheckReport {
    let mut c = Check::new("shift-pairs");
    let t = match PaigeLoop2::paige() {
        Ok(t) => t,
        Err(e) => {
            c.fail(e.to_string());
            return c.finish();
        }
    };
    let e = Octonion::<Gf2>::identity();
    let in_loop = |x: Octonion<Gf2>| t.lookup(&x).is_some();
    let n = t.len() as u32;
    for x in 0..n {
        for y in 0..n {
            let (xe, ye) = (*t.element(x), *t.element(y));
            if x == y || in_loop(xe + e) || in_loop(ye + e) || in_loop(xe + ye) {
                continue;
            }
            // e satisfies the hypothesis (e + e = 0) without generating V4 with y;
            // only the shift witness is required then
            let v4 = x == 0
                || y == 0
                || (t.mul(x, x) == 0
                    && t.mul(y, y) == 0
                    && t.involution_pair_classify(x, y) == Ok(PairKind::V4));
            c.record(v4 && shift_witness(&t, x, y).is_some(), || {
                format!("x={xe} y={ye} v4={v4}")
            });
        }
    }
    for (u, a) in [(named::U1, named::A_SHIFT1), (named::U2, named::A_SHIFT2)] {
        let (x, y, a) = (named(named::X0), named(u), named(a));
        c.record(in_loop(x + a) && in_loop(y + e + a), || {
            format!("explicit witness a={a} fails for y={y}")
        });
    }
    c.finish()
}

/// A deterministic sample of group members: the generators, then `extra`
/// seeded draws from the closure.
fn sampled_members(ctx: &AutContext, extra: usize, rng: &mut impl Rng) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = ctx.group.generators().to_vec();
    out.extend((0..extra).map(|_| {
        let i = rng.gen_range(0..ctx.group.order());
        ctx.group.element(i as u32).clone()
    }));
    out
}

/// Additivity on M*(2): pairs for generators and sampled members,
/// multi-summand sums, and the expansion of every element in the canonical
/// basis.
pub fn verify_additivity(ctx: &AutContext, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let t = &ctx.table;
    let n = t.len() as u32;
    let mut rng = cfg.rng();
    let maps = sampled_members(ctx, ADDITIVITY_GROUP_SAMPLE, &mut rng);
    let el = |i: u32| *t.element(i);

    let mut pairs = Check::new("additivity-pairs");
    let valid: Vec<(u32, u32, u32)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter_map(|(x, y)| t.lookup(&(el(x) + el(y))).map(|s| (x, y, s)))
        .collect();
    for g in &maps {
        for &(x, y, s) in &valid {
            let ok = el(g.apply(s)) == el(g.apply(x)) + el(g.apply(y));
            pairs.record(ok, || format!("x={} y={}", el(x), el(y)));
        }
    }

    let mut multi = Check::new("additivity-summands");
    let mut drawn = 0;
    while drawn < MULTI_SUMMAND_SAMPLES {
        let k = rng.gen_range(1..=MAX_SUMMANDS);
        let mut xs: Vec<u32> = (0..k - 1).map(|_| rng.gen_range(0..n)).collect();
        let partial = xs.iter().fold(Octonion::zero(), |acc, &i| acc + el(i));
        let closing: Vec<u32> = (0..n)
            .filter(|&i| t.lookup(&(partial + el(i))).is_some())
            .collect();
        let Some(&last) = closing.choose(&mut rng) else {
            continue;
        };
        xs.push(last);
        drawn += 1;
        let sum = t.lookup(&(partial + el(last))).expect("closing summand");
        let g = maps.choose(&mut rng).expect("at least the generators");
        let image = xs
            .iter()
            .fold(Octonion::zero(), |acc, &i| acc + el(g.apply(i)));
        multi.record(el(g.apply(sum)) == image, || {
            let texts: Vec<String> = xs.iter().map(|&i| el(i).to_string()).collect();
            format!("summands [{}]", texts.join(", "))
        });
    }

    let mut basis = Check::new("additivity-basis");
    match basis_expansions(t) {
        Ok(expansions) => {
            for g in &maps {
                for (x, parts) in expansions.iter().enumerate() {
                    let image = parts
                        .iter()
                        .fold(Octonion::zero(), |acc, &i| acc + el(g.apply(i)));
                    basis.record(el(g.apply(x as u32)) == image, || {
                        format!("x={}", el(x as u32))
                    });
                }
            }
        }
        Err(e) => basis.fail(e.to_string()),
    }
    vec![pairs.finish(), multi.finish(), basis.finish()]
}

/// For each element of M*(2), the basis members (by index) it is the sum of,
/// using the basis induced by the canonical triple.
pub fn basis_expansions(t: &PaigeLoop2) -> Result<Vec<Vec<u32>>, AutError> {
    let src = canonical_triple::<Gf2>()?;
    let basis = triple_basis::<Zorn<Gf2>>(&src);
    let columns = LinearMap::from_columns(basis.map(|x| x.coords()));
    let inverse = columns.inverse().ok_or(AutError::Singular)?;
    let idx: Vec<u32> = basis
        .iter()
        .map(|b| {
            t.lookup(b)
                .ok_or(AutError::Precondition(format!("{b} is not a unit")))
        })
        .collect::<Result<_, _>>()?;
    Ok(t.elements()
        .iter()
        .map(|x| {
            let coeffs = inverse.apply_coords(&x.coords());
            (0..8)
                .filter(|&k| coeffs[k].is_one())
                .map(|k| idx[k])
                .collect()
        })
        .collect())
}

/// Additivity on the unit sphere of the Zorn model over GF(q), for the
/// signed permutations, the switch in characteristic 2 and conjugations by
/// sampled elements with `x^3 = e`. Includes the `x = y` case, which is
/// possible only in characteristic 3.
pub fn additivity_odd<F: FiniteField>(cfg: &SuiteConfig) -> Vec<CheckReport> {
    type Map<F> = Box<dyn Fn(&Octonion<F>) -> Octonion<F>>;
    let mut rng = cfg.rng();
    let mut maps: Vec<(String, Map<F>)> = Vec::new();
    for pi in S3_PERMUTATIONS {
        let h = signed_perm_automorphism::<F>(pi);
        maps.push((
            format!("sgn*pi{pi:?}"),
            Box::new(move |x| h.apply::<Zorn<F>>(x)),
        ));
    }
    if let Ok(s) = diagonal_switch::<F>() {
        maps.push(("sigma".into(), Box::new(move |x| s.apply::<Zorn<F>>(x))));
    }
    let e = Octonion::<F>::identity();
    let mut cubes = 0;
    while cubes < 4 {
        let x: Octonion<F> = random_unit::<Zorn<F>>(&mut rng);
        if x == e || x.pow(3) != e {
            continue;
        }
        cubes += 1;
        let xi = x.conjugate();
        maps.push((format!("T[{x}]"), Box::new(move |y| (xi * *y) * x)));
    }

    let one = F::one();
    let mut pairs = Check::new("additivity-sphere");
    let mut doubled = Check::new("additivity-doubling");
    let mut drawn = 0;
    while drawn < cfg.samples {
        let x: Octonion<F> = random_unit::<Zorn<F>>(&mut rng);
        let y: Octonion<F> = random_unit::<Zorn<F>>(&mut rng);
        let (label, g) = &maps[drawn % maps.len()];
        let twice = x + x;
        // N(2x) = 4, which is 1 exactly in characteristic 3
        doubled.record((twice.norm() == one) == (F::characteristic() == 3), || {
            format!("N(2x) for x={x}")
        });
        if twice.norm() == one {
            doubled.record(g(&twice) == g(&x) + g(&x), || format!("{label}: x={x}"));
        }
        if (x + y).norm() != one {
            continue;
        }
        drawn += 1;
        let (gx, gy) = (g(&x), g(&y));
        let ok = gx.norm() == one && gy.norm() == one && g(&(x + y)) == gx + gy;
        pairs.record(ok, || format!("{label}: x={x} y={y}"));
    }
    vec![pairs.finish(), doubled.finish()]
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::gf::Gf;

    /// `<x, y>` for every pair of involutions, and the sorted subgroups.
    fn klein_sets(t: &PaigeLoop2) -> BTreeSet<Vec<u32>> {
        let invs = t.involutions();
        let mut out = BTreeSet::new();
        for &x in &invs {
            for &y in &invs {
                if x != y && t.involution_pair_classify(x, y) == Ok(PairKind::V4) {
                    out.insert(v4_of(t, x, y));
                }
            }
        }
        out
    }

    fn ctx() -> AutContext {
        AutContext::build().unwrap()
    }

    #[test]
    fn orbits_at_q2() {
        let ctx = ctx();
        let c2 = orbit_c2(&ctx);
        assert_eq!(c2.orbits.len(), 1);
        assert_eq!(c2.orbits[0].len(), 63);
        let v4 = orbit_v4(&ctx).unwrap();
        assert_eq!(v4.orbits.len(), 2);
        assert_eq!(v4.pair_orbits_missed, 0);
        let total: usize = v4.orbits.iter().map(Vec::len).sum();
        assert_eq!(total, klein_sets(&ctx.table).len());
        for r in orbit_reports(&ctx) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn shift_pairs_hold() {
        let r = verify_shift_pairs();
        assert!(r.passed(), "{r:?}");
        assert!(r.cases > 2);
    }

    #[test]
    fn basis_expansion_of_x0() {
        let t = PaigeLoop2::paige().unwrap();
        let exp = basis_expansions(&t).unwrap();
        let x0 = t.lookup(&named(named::X0)).unwrap();
        let sum = exp[x0 as usize]
            .iter()
            .fold(Octonion::zero(), |acc, &i| acc + *t.element(i));
        assert_eq!(sum, named(named::X0));
        // e is its own expansion
        assert_eq!(exp[0], vec![0]);
    }

    #[test]
    fn additivity_at_q2() {
        let ctx = ctx();
        let cfg = SuiteConfig::default();
        for r in verify_additivity(&ctx, &cfg) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn additivity_off_q2() {
        let cfg = SuiteConfig {
            samples: 2000,
            ..SuiteConfig::default()
        };
        let r3 = additivity_odd::<Gf<3>>(&cfg);
        assert!(r3.iter().all(CheckReport::passed), "{r3:?}");
        // at q = 3 every unit x has N(2x) = 1, so the x = y case is exercised
        assert!(r3[1].cases > cfg.samples as u64);
        let r4 = additivity_odd::<Gf<4>>(&cfg);
        assert!(r4.iter().all(CheckReport::passed), "{r4:?}");
    }
}
