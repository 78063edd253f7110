use std::collections::BTreeSet;
use std::fmt;

use super::{LoopError, LoopTable};
use crate::scalar::FiniteField;
use crate::zorn::{Octonion, OctonionAlgebra, Vec3, Zorn};

/// Isomorphism type of a small generated subgroup, read off its order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    Klein4,
    Symmetric3,
    Other(usize),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Klein4 => write!(f, "V4"),
            GroupKind::Symmetric3 => write!(f, "S3"),
            GroupKind::Other(n) => write!(f, "order-{n}"),
        }
    }
}

/// A generated subloop, as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub kind: GroupKind,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.elements.binary_search(&i).is_ok()
    }
}

/// Commuting (Klein four-group) or non-commuting (S3) pair of involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    V4,
    S3,
}

impl<A: OctonionAlgebra> LoopTable<A> {
    /// Closure of `gens` under products (inverses come for free in a finite loop).
    pub fn subgroup_generate(&self, gens: &[u32]) -> Subgroup {
        let mut set: BTreeSet<u32> = gens.iter().copied().collect();
        set.insert(0);
        let mut members: Vec<u32> = set.iter().copied().collect();
        let mut frontier = members.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for k in 0..members.len() {
                    let y = members[k];
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if set.insert(p) {
                            members.push(p);
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        let elements: Vec<u32> = set.into_iter().collect();
        let kind = self.classify_group(&elements);
        Subgroup { elements, kind }
    }

    fn classify_group(&self, elements: &[u32]) -> GroupKind {
        let n = elements.len();
        let max_order = elements.iter().map(|&i| self.order(i)).max().unwrap_or(1) as usize;
        match n {
            _ if max_order == n => GroupKind::Cyclic(n),
            4 => GroupKind::Klein4,
            6 => GroupKind::Symmetric3,
            _ => GroupKind::Other(n),
        }
    }

    /// Whether every triple of `elements` associates.
    pub fn is_associative_on(&self, elements: &[u32]) -> bool {
        elements.iter().all(|&x| {
            elements.iter().all(|&y| {
                elements
                    .iter()
                    .all(|&z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))
            })
        })
    }
}

/// Outcome of the S3-membership checks on the involutions of M*(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S3Report {
    pub involutions: usize,
    /// Involutions for which the explicit partner recipe produced an S3.
    pub partners_found: usize,
    pub s3_subgroups: usize,
    /// S3 subgroups containing an involution with diagonal entry 0.
    pub with_zero_diagonal: usize,
}

impl S3Report {
    pub fn passes(&self) -> bool {
        self.partners_found == self.involutions && self.with_zero_diagonal == self.s3_subgroups
    }
}

impl<F: FiniteField> LoopTable<Zorn<F>> {
    fn require_q2(&self) -> Result<(), LoopError> {
        if F::ORDER == 2 {
            Ok(())
        } else {
            Err(LoopError::RequiresQ2)
        }
    }

    /// Dot-product test for two distinct involutions of M*(2): commuting
    /// exactly when `alpha.delta = beta.gamma`.
    pub fn involution_pair_classify(&self, x: u32, y: u32) -> Result<PairKind, LoopError> {
        self.require_q2()?;
        for i in [x, y] {
            if i == 0 || self.mul(i, i) != 0 {
                return Err(LoopError::NotInvolution(i));
            }
        }
        if x == y {
            return Err(LoopError::EqualArguments(x));
        }
        let (u, v) = (self.element(x), self.element(y));
        if u.alpha.dot(&v.beta) == u.beta.dot(&v.alpha) {
            Ok(PairKind::V4)
        } else {
            Ok(PairKind::S3)
        }
    }

    /// Explicit S3 partner of an involution `x = (a, alpha; beta, a)`: the first
    /// `(b, gamma; delta, b)` in the loop with `delta` orthogonal to `alpha` and
    /// `gamma` not orthogonal to `beta`. When `beta = 0` the roles of the two
    /// vector slots are swapped.
    pub fn s3_partner(&self, x: u32) -> Option<u32> {
        let u = self.element(x);
        let one = F::one();
        let swap = u.beta.is_zero();
        let (hit, miss) = if swap {
            (u.alpha, u.beta)
        } else {
            (u.beta, u.alpha)
        };
        Vec3::<F>::all()
            .filter(|g| !g.dot(&hit).is_zero())
            .flat_map(|g| {
                Vec3::<F>::all()
                    .filter(|d| d.dot(&miss).is_zero())
                    .map(move |d| (g, d))
            })
            .find_map(|(g, d)| {
                // b^2 = 1 + gamma.delta; over GF(2) squaring is the identity
                let b = one + g.dot(&d);
                let y = if swap {
                    Octonion::new(b, d, g, b)
                } else {
                    Octonion::new(b, g, d, b)
                };
                (y.norm() == one).then(|| self.lookup(&y)).flatten()
            })
    }

    /// Every involution lies in an S3, and every S3 contains an involution
    /// with zero diagonal.
    pub fn s3_membership_props(&self) -> Result<S3Report, LoopError> {
        self.require_q2()?;
        let invs = self.involutions();
        let partners_found = invs
            .iter()
            .filter(|&&x| {
                self.s3_partner(x)
                    .map(|y| self.subgroup_generate(&[x, y]).kind == GroupKind::Symmetric3)
                    .unwrap_or(false)
            })
            .count();
        let mut s3s: BTreeSet<Vec<u32>> = BTreeSet::new();
        for (k, &x) in invs.iter().enumerate() {
            for &y in &invs[k + 1..] {
                if self.involution_pair_classify(x, y)? == PairKind::S3 {
                    s3s.insert(self.subgroup_generate(&[x, y]).elements);
                }
            }
        }
        let with_zero_diagonal = s3s
            .iter()
            .filter(|g| {
                g.iter().any(|&i| {
                    let z = self.element(i);
                    i != 0 && self.mul(i, i) == 0 && z.a.is_zero()
                })
            })
            .count();
        Ok(S3Report {
            involutions: invs.len(),
            partners_found,
            s3_subgroups: s3s.len(),
            with_zero_diagonal,
        })
    }

    /// All subgroups isomorphic to V4, as sorted index tuples.
    pub fn klein_subgroups(&self) -> Result<Vec<[u32; 4]>, LoopError> {
        self.require_q2()?;
        let invs = self.involutions();
        let mut out = BTreeSet::new();
        for (k, &x) in invs.iter().enumerate() {
            for &y in &invs[k + 1..] {
                if self.involution_pair_classify(x, y)? == PairKind::V4 {
                    let mut g = [0, x, y, self.mul(x, y)];
                    g.sort_unstable();
                    out.insert(g);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}
