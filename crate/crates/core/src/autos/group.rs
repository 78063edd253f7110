use std::collections::{BTreeSet, HashMap};

use super::{audit_loop_automorphism, AutError, LoopAutomorphism, Permutation};
use crate::loops::LoopTable;
use crate::zorn::OctonionAlgebra;

/// A permutation group given by generators, with every element enumerated.
///
/// Element 0 is the identity. Each other element records the element it was
/// reached from and the generator applied last, so [`PermGroup::word`] can
/// rebuild it.
#[derive(Debug, Clone)]
pub struct PermGroup {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    parent: Vec<Option<(u32, u32)>>,
}

impl PermGroup {
    /// Breadth-first closure under composition with the generators.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Self {
        let id = Permutation::identity(degree);
        let mut group = PermGroup {
            generators,
            elements: vec![id.clone()],
            index: HashMap::from([(id, 0)]),
            parent: vec![None],
        };
        let mut next = 0;
        while next < group.elements.len() {
            for (k, g) in group.generators.iter().enumerate() {
                let p = g.compose(&group.elements[next]);
                if !group.index.contains_key(&p) {
                    group.index.insert(p.clone(), group.elements.len() as u32);
                    group.elements.push(p);
                    group.parent.push(Some((next as u32, k as u32)));
                }
            }
            next += 1;
        }
        group
    }

    /// Audits every generator against `t`, then closes.
    pub fn closure<A: OctonionAlgebra>(
        t: &LoopTable<A>,
        gens: &[LoopAutomorphism<A::Scalar>],
    ) -> Result<Self, AutError> {
        for g in gens {
            audit_loop_automorphism(t, &g.perm)?;
        }
        Ok(Self::generate(
            t.len(),
            gens.iter().map(|g| g.perm.clone()).collect(),
        ))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn position(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Generator indices `[k1, ..., km]` with element `i` equal to
    /// `g_km ∘ ... ∘ g_k1` (so `k1` acts first).
    pub fn word(&self, i: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((p, k)) = self.parent[cur as usize] {
            out.push(k);
            cur = p;
        }
        out.reverse();
        out
    }

    /// First element, in closure order, sending `from` to `to`.
    pub fn find_mapping(&self, from: u32, to: u32) -> Option<u32> {
        (0..self.order() as u32).find(|&i| self.elements[i as usize].apply(from) == to)
    }

    /// Orbits of the group on `0..degree`.
    pub fn point_orbits(&self, points: &[u32]) -> Vec<Vec<u32>> {
        orbits_on_points(&self.generators, points)
    }
}

/// Orbits of `points` (assumed closed under the generators), each sorted,
/// listed by smallest member.
pub fn orbits_on_points(gens: &[Permutation], points: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    for &p in &sorted {
        if !seen.insert(p) {
            continue;
        }
        let mut orbit = vec![p];
        let mut k = 0;
        while k < orbit.len() {
            for g in gens {
                let q = g.apply(orbit[k]);
                if seen.insert(q) {
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbits on sets of points, each set kept as a sorted tuple.
pub fn orbits_on_sets(gens: &[Permutation], sets: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let image = |g: &Permutation, s: &[u32]| {
        let mut v: Vec<u32> = s.iter().map(|&i| g.apply(i)).collect();
        v.sort_unstable();
        v
    };
    let mut all: Vec<Vec<u32>> = sets
        .iter()
        .map(|s| {
            let mut v = s.clone();
            v.sort_unstable();
            v
        })
        .collect();
    all.sort();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in all {
        if !seen.insert(s.clone()) {
            continue;
        }
        let mut orbit = vec![s];
        let mut k = 0;
        while k < orbit.len() {
            for g in gens {
                let t = image(g, &orbit[k]);
                if seen.insert(t.clone()) {
                    orbit.push(t);
                }
            }
            k += 1;
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}
