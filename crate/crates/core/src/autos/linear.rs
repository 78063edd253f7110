use std::fmt;

use crate::scalar::FiniteField;
use crate::zorn::OctonionAlgebra;

/// Row-reduces `rows` in place and returns the rank.
pub fn rank<F: FiniteField, const N: usize>(mut rows: Vec<[F; N]>) -> usize {
    let mut rank = 0;
    for col in 0..N {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].try_inv().expect("pivot is nonzero");
        let pivot_row = rows[rank].map(|x| x * inv);
        rows[rank] = pivot_row;
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = *x - factor * *p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A linear endomorphism of the coordinate space k^8.
///
/// `rows[r][c]` is row `r`, column `c`; column `c` is the image of the `c`-th
/// coordinate basis vector, so `apply(x)[r] = sum_c rows[r][c] * x[c]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap<F> {
    rows: [[F; 8]; 8],
}

impl<F: FiniteField> fmt::Debug for LinearMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.map(|x| x.index())))
            .finish()
    }
}

impl<F: FiniteField> LinearMap<F> {
    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> F) -> Self {
        LinearMap {
            rows: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn from_rows(rows: [[F; 8]; 8]) -> Self {
        LinearMap { rows }
    }

    /// The map sending coordinate basis vector `c` to `images[c]`.
    pub fn from_columns(images: [[F; 8]; 8]) -> Self {
        Self::from_fn(|r, c| images[c][r])
    }

    /// Parses the row-major canonical-index form produced by [`Self::to_indices`].
    pub fn from_indices(rows: &[Vec<u32>]) -> Option<Self> {
        if rows.len() != 8 || rows.iter().any(|r| r.len() != 8) {
            return None;
        }
        let mut out = [[F::zero(); 8]; 8];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out[r][c] = F::from_index(v)?;
            }
        }
        Some(LinearMap { rows: out })
    }

    pub fn rows(&self) -> &[[F; 8]; 8] {
        &self.rows
    }

    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.index()).collect())
            .collect()
    }

    pub fn apply_coords(&self, x: &[F; 8]) -> [F; 8] {
        std::array::from_fn(|r| {
            self.rows[r]
                .iter()
                .zip(x)
                .fold(F::zero(), |acc, (&m, &v)| acc + m * v)
        })
    }

    pub fn apply<A: OctonionAlgebra<Scalar = F>>(&self, x: &A::Elem) -> A::Elem {
        A::from_coords(self.apply_coords(&A::coords(x)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| {
            (0..8).fold(F::zero(), |acc, k| acc + self.rows[r][k] * other.rows[k][c])
        })
    }

    pub fn rank(&self) -> usize {
        rank(self.rows.to_vec())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == 8
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Self> {
        let mut aug: Vec<[F; 16]> = (0..8)
            .map(|r| {
                std::array::from_fn(|c| {
                    if c < 8 {
                        self.rows[r][c]
                    } else if c - 8 == r {
                        F::one()
                    } else {
                        F::zero()
                    }
                })
            })
            .collect();
        for col in 0..8 {
            let pivot = (col..8).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].try_inv()?;
            let pivot_row = aug[col].map(|x| x * inv);
            aug[col] = pivot_row;
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col];
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x = *x - factor * *p;
                    }
                }
            }
        }
        Some(Self::from_fn(|r, c| aug[r][c + 8]))
    }

    /// First pair of coordinate basis vectors `(e_i, e_j)` with
    /// `h(e_i e_j) != h(e_i) h(e_j)`. By bilinearity of the product, `None`
    /// means `h` is multiplicative on the whole algebra.
    pub fn multiplicativity_witness<A: OctonionAlgebra<Scalar = F>>(
        &self,
    ) -> Option<(A::Elem, A::Elem)> {
        let images: Vec<A::Elem> = (0..8).map(|i| self.apply::<A>(&A::basis(i))).collect();
        for i in 0..8 {
            for j in 0..8 {
                let (u, v) = (A::basis(i), A::basis(j));
                if self.apply::<A>(&(u * v)) != images[i] * images[j] {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_multiplicative<A: OctonionAlgebra<Scalar = F>>(&self) -> bool {
        self.multiplicativity_witness::<A>().is_none()
    }

    /// First coordinate basis vector or pair whose norm or polar form is not
    /// preserved. A quadratic form is determined by its values on a basis and
    /// its polar form on basis pairs, so `None` means `h` is an isometry.
    pub fn isometry_witness<A: OctonionAlgebra<Scalar = F>>(&self) -> Option<(A::Elem, A::Elem)> {
        let images: Vec<A::Elem> = (0..8).map(|i| self.apply::<A>(&A::basis(i))).collect();
        for i in 0..8 {
            let u = A::basis(i);
            if A::norm(&images[i]) != A::norm(&u) {
                return Some((u, u));
            }
            for j in i + 1..8 {
                let v = A::basis(j);
                if A::bilinear(&images[i], &images[j]) != A::bilinear(&u, &v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_isometry<A: OctonionAlgebra<Scalar = F>>(&self) -> bool {
        self.isometry_witness::<A>().is_none()
    }

    /// Checks `h(xy) = h(x)h(y)` on every pair of elements; q^16 products.
    pub fn audit_all_pairs<A: OctonionAlgebra<Scalar = F>>(&self) -> Option<(A::Elem, A::Elem)> {
        use rayon::prelude::*;
        let all: Vec<A::Elem> = A::all().collect();
        let images: Vec<A::Elem> = all.iter().map(|x| self.apply::<A>(x)).collect();
        (0..all.len()).into_par_iter().find_map_first(|i| {
            (0..all.len()).find_map(|j| {
                let (x, y) = (all[i], all[j]);
                (self.apply::<A>(&(x * y)) != images[i] * images[j]).then_some((x, y))
            })
        })
    }
}

/// Compact `[[row];...]` text for logs and witnesses.
impl<F: FiniteField> fmt::Display for LinearMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, "/")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}
