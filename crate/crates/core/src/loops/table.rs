use std::collections::{BTreeMap, HashMap};

use dashmap::DashMap;
use num_traits::One;

use super::LoopError;
use crate::scalar::{FiniteField, Scalar};
use crate::zorn::OctonionAlgebra;

/// Which loop of unit elements a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopKind {
    /// All elements of norm one, M(q).
    Sphere,
    /// M(q) modulo its center {e, -e}; the same as `Sphere` in characteristic 2.
    Paige,
}

enum Products {
    Full(Vec<u32>),
    Memo(DashMap<(u32, u32), u32>),
}

/// The enumerated loop: canonical representatives with the identity at index 0
/// followed by the remaining elements in enumeration order.
pub struct LoopTable<A: OctonionAlgebra> {
    kind: LoopKind,
    quotient: bool,
    elements: Vec<A::Elem>,
    index: HashMap<A::Elem, u32>,
    inverses: Vec<u32>,
    products: Products,
}

impl<A: OctonionAlgebra> std::fmt::Debug for LoopTable<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LoopTable")
            .field("algebra", &A::NAME)
            .field("q", &A::Scalar::ORDER)
            .field("kind", &self.kind)
            .field("len", &self.elements.len())
            .finish()
    }
}

impl<A: OctonionAlgebra> LoopTable<A> {
    /// The Paige loop M*(q).
    pub fn paige() -> Result<Self, LoopError> {
        Self::build(LoopKind::Paige)
    }

    /// The full unit sphere M(q).
    pub fn sphere() -> Result<Self, LoopError> {
        Self::build(LoopKind::Sphere)
    }

    pub fn build(kind: LoopKind) -> Result<Self, LoopError> {
        A::check_supported()?;
        let quotient = kind == LoopKind::Paige && A::Scalar::characteristic() != 2;
        let one = A::Scalar::one();
        let e = A::one();
        let mut elements = vec![e];
        // e < -e in enumeration order, so -e is never a canonical representative
        elements
            .extend(A::all().filter(|x| A::norm(x) == one && *x != e && (!quotient || *x <= -*x)));
        let index: HashMap<A::Elem, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (*x, i as u32))
            .collect();
        let mut table = LoopTable {
            kind,
            quotient,
            elements,
            index,
            inverses: Vec::new(),
            products: Products::Memo(DashMap::new()),
        };
        table.inverses = (0..table.len() as u32)
            .map(|i| {
                let x = table.elements[i as usize];
                table
                    .lookup(&A::conjugate(&x))
                    .expect("unit loop closed under inverse")
            })
            .collect();
        if A::Scalar::ORDER == 2 {
            let n = table.len();
            let mut full = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    full[i * n + j] = table.compute_product(i as u32, j as u32);
                }
            }
            table.products = Products::Full(full);
        }
        Ok(table)
    }

    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    /// True when elements stand for classes {x, -x}.
    pub fn is_quotient(&self) -> bool {
        self.quotient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[A::Elem] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &A::Elem {
        &self.elements[i as usize]
    }

    /// Canonical representative: `min(x, -x)` for the quotient, `x` otherwise.
    pub fn canonical(&self, x: &A::Elem) -> A::Elem {
        if self.quotient {
            let minus = -*x;
            if minus < *x {
                minus
            } else {
                *x
            }
        } else {
            *x
        }
    }

    /// Index of (the class of) `x`, `None` when `x` is not in the loop.
    pub fn lookup(&self, x: &A::Elem) -> Option<u32> {
        self.index.get(&self.canonical(x)).copied()
    }

    fn compute_product(&self, i: u32, j: u32) -> u32 {
        let p = self.elements[i as usize] * self.elements[j as usize];
        self.lookup(&p).expect("unit loop closed under products")
    }

    /// Product of two elements by index.
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.products {
            Products::Full(t) => t[i as usize * self.len() + j as usize],
            Products::Memo(cache) => {
                if let Some(k) = cache.get(&(i, j)) {
                    return *k;
                }
                let k = self.compute_product(i, j);
                cache.insert((i, j), k);
                k
            }
        }
    }

    pub fn checked_mul(&self, i: u32, j: u32) -> Result<u32, LoopError> {
        let n = self.len() as u32;
        for idx in [i, j] {
            if idx >= n {
                return Err(LoopError::IndexOutOfRange { index: idx, len: n });
            }
        }
        Ok(self.mul(i, j))
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    pub fn pow(&self, i: u32, n: u64) -> u32 {
        (0..n).fold(0, |acc, _| self.mul(acc, i))
    }

    /// Order of an element of the loop (of its class, for the quotient).
    pub fn order(&self, i: u32) -> u64 {
        let mut m = 1;
        if let Products::Full(_) = self.products {
            let mut p = i;
            while p != 0 {
                p = self.mul(p, i);
                m += 1;
            }
            return m;
        }
        // powers straight from the algebra, so a census does not fill the memo
        let x = self.elements[i as usize];
        let e = A::one();
        let mut p = x;
        while self.canonical(&p) != e {
            p = p * x;
            m += 1;
        }
        m
    }

    /// Number of elements of each order.
    pub fn census(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.len() as u32 {
            *out.entry(self.order(i)).or_insert(0) += 1;
        }
        out
    }

    pub fn involutions(&self) -> Vec<u32> {
        (1..self.len() as u32)
            .filter(|&i| self.mul(i, i) == 0)
            .collect()
    }

    pub fn elements_of_order(&self, n: u64) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&i| self.order(i) == n)
            .collect()
    }

    /// `x^{-1} y x`, with `x` and `y` by index.
    pub fn conjugate_by(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), y), x)
    }

    /// The `c` with `xy = (yx) c`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.inv(self.mul(y, x)), self.mul(x, y))
    }

    /// Canonical text of every element, in index order.
    pub fn export(&self) -> Vec<String> {
        self.elements.iter().map(|x| x.to_string()).collect()
    }
}

/// The Paige loop of the Zorn model over `F`.
pub fn enumerate_loop<F: FiniteField>() -> LoopTable<crate::zorn::Zorn<F>> {
    LoopTable::paige().expect("the Zorn model exists over every field")
}
