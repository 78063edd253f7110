//! Table-driven arithmetic in GF(q) for q in {2, 3, 4, 5, 7, 8, 9}.
//!
//! Elements are stored as canonical indices. For a prime field the index is
//! the residue. For GF(p^n) with n > 1 the index of the polynomial
//! `c0 + c1 x + ... + c_{n-1} x^{n-1}` is `c0 + c1 p + ... + c_{n-1} p^{n-1}`,
//! reduced modulo a fixed irreducible polynomial:
//!
//! | q | modulus         | primitive element |
//! |---|-----------------|-------------------|
//! | 4 | x^2 + x + 1     | x (index 2)       |
//! | 8 | x^3 + x + 1     | x (index 2)       |
//! | 9 | x^2 + 2x + 2    | x (index 3)       |
//!
//! These are the Conway polynomials, so `x` is a primitive element in each
//! case and the exponent/logarithm tables of [`Field`] are generated by it.
//!
//! Two layers are provided. [`Gf`] is a `Copy` scalar whose field is fixed by a
//! const parameter, so operands from different fields cannot be mixed at all.
//! [`Field`] and [`FieldElement`] are the runtime counterpart: elements carry
//! their order and every operation checks it.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{FiniteField, Scalar};

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(u32),
    #[error("operands belong to different fields: GF({left}) and GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("index {index} is not an element of GF({q})")]
    IndexOutOfRange { q: u32, index: u32 },
    #[error("field axiom `{axiom}` fails in GF({q})")]
    AxiomViolation { q: u32, axiom: &'static str },
}

pub const fn is_supported(q: u32) -> bool {
    matches!(q, 2 | 3 | 4 | 5 | 7 | 8 | 9)
}

const MAX_Q: usize = 9;

#[derive(Clone, Copy)]
struct Tables {
    q: u8,
    p: u8,
    n: u8,
    // monic modulus, coefficients from degree 0 up to degree n
    modulus: [u8; 4],
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
}

const fn digits(mut i: u8, p: u8, n: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    while k < n as usize {
        out[k] = i % p;
        i /= p;
        k += 1;
    }
    out
}

const fn undigits(d: &[u8; 3], p: u8, n: u8) -> u8 {
    let mut out = 0u8;
    let mut k = n as usize;
    while k > 0 {
        k -= 1;
        out = out * p + d[k];
    }
    out
}

const fn poly_mul(x: u8, y: u8, p: u8, n: u8, modulus: &[u8; 4]) -> u8 {
    let dx = digits(x, p, n);
    let dy = digits(y, p, n);
    let mut prod = [0u16; 5];
    let mut i = 0;
    while i < n as usize {
        let mut j = 0;
        while j < n as usize {
            prod[i + j] = (prod[i + j] + dx[i] as u16 * dy[j] as u16) % p as u16;
            j += 1;
        }
        i += 1;
    }
    let mut deg = 2 * n as usize - 2;
    while deg >= n as usize {
        let c = prod[deg];
        if c != 0 {
            let shift = deg - n as usize;
            let mut k = 0;
            while k <= n as usize {
                let sub = (c * modulus[k] as u16) % p as u16;
                prod[shift + k] = (prod[shift + k] + p as u16 - sub) % p as u16;
                k += 1;
            }
        }
        deg -= 1;
    }
    let mut out = [0u8; 3];
    let mut k = 0;
    while k < n as usize {
        out[k] = prod[k] as u8;
        k += 1;
    }
    undigits(&out, p, n)
}

const fn build(q: u8, p: u8, n: u8, modulus: [u8; 4]) -> Tables {
    let mut t = Tables {
        q,
        p,
        n,
        modulus,
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
    };
    let mut x = 0;
    while x < q {
        let dx = digits(x, p, n);
        let mut neg = [0u8; 3];
        let mut k = 0;
        while k < n as usize {
            neg[k] = (p - dx[k]) % p;
            k += 1;
        }
        t.neg[x as usize] = undigits(&neg, p, n);
        let mut y = 0;
        while y < q {
            let dy = digits(y, p, n);
            let mut sum = [0u8; 3];
            let mut k = 0;
            while k < n as usize {
                sum[k] = (dx[k] + dy[k]) % p;
                k += 1;
            }
            t.add[x as usize][y as usize] = undigits(&sum, p, n);
            let m = poly_mul(x, y, p, n, &modulus);
            t.mul[x as usize][y as usize] = m;
            if m == 1 {
                t.inv[x as usize] = y;
            }
            y += 1;
        }
        x += 1;
    }
    t
}

const EMPTY: Tables = Tables {
    q: 0,
    p: 0,
    n: 0,
    modulus: [0; 4],
    add: [[0; MAX_Q]; MAX_Q],
    mul: [[0; MAX_Q]; MAX_Q],
    neg: [0; MAX_Q],
    inv: [0; MAX_Q],
};

static TABLES: [Tables; MAX_Q + 1] = [
    EMPTY,
    EMPTY,
    build(2, 2, 1, [0, 1, 0, 0]),
    build(3, 3, 1, [0, 1, 0, 0]),
    build(4, 2, 2, [1, 1, 1, 0]),
    build(5, 5, 1, [0, 1, 0, 0]),
    EMPTY,
    build(7, 7, 1, [0, 1, 0, 0]),
    build(8, 2, 3, [1, 1, 0, 1]),
    build(9, 3, 2, [2, 2, 1, 0]),
];

fn tables(q: u32) -> Result<&'static Tables, GfError> {
    if is_supported(q) {
        let t = &TABLES[q as usize];
        debug_assert_eq!(t.q as u32, q);
        Ok(t)
    } else {
        Err(GfError::UnsupportedOrder(q))
    }
}

/// An element of GF(Q), fixed at compile time.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf<const Q: u8>(u8);

impl<const Q: u8> Gf<Q> {
    const SUPPORTED: () = assert!(is_supported(Q as u32), "unsupported field order");
    const PRIME: bool = matches!(Q, 2 | 3 | 5 | 7);

    #[inline]
    fn table() -> &'static Tables {
        let () = Self::SUPPORTED;
        &TABLES[Q as usize]
    }

    /// Element from a canonical index; `index` is reduced modulo `Q` for prime
    /// fields and must be below `Q` otherwise.
    pub fn new(index: u8) -> Self {
        let () = Self::SUPPORTED;
        if Self::PRIME {
            Gf(index % Q)
        } else {
            assert!(index < Q, "index {index} out of range for GF({Q})");
            Gf(index)
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn to_element(self) -> FieldElement {
        FieldElement {
            q: Q,
            value: self.0,
        }
    }
}

impl<const Q: u8> fmt::Debug for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u8> fmt::Display for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u8> Add for Gf<Q> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        if Q == 2 {
            Gf(self.0 ^ rhs.0)
        } else if Self::PRIME {
            Gf((self.0 + rhs.0) % Q)
        } else {
            Gf(Self::table().add[self.0 as usize][rhs.0 as usize])
        }
    }
}

impl<const Q: u8> Neg for Gf<Q> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if Q == 2 {
            self
        } else if Self::PRIME {
            Gf((Q - self.0) % Q)
        } else {
            Gf(Self::table().neg[self.0 as usize])
        }
    }
}

impl<const Q: u8> Sub for Gf<Q> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const Q: u8> Mul for Gf<Q> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if Q == 2 {
            Gf(self.0 & rhs.0)
        } else if Self::PRIME {
            Gf(((self.0 as u16 * rhs.0 as u16) % Q as u16) as u8)
        } else {
            Gf(Self::table().mul[self.0 as usize][rhs.0 as usize])
        }
    }
}

impl<const Q: u8> AddAssign for Gf<Q> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const Q: u8> SubAssign for Gf<Q> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const Q: u8> MulAssign for Gf<Q> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const Q: u8> Zero for Gf<Q> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const Q: u8> One for Gf<Q> {
    fn one() -> Self {
        Gf(1)
    }
}

impl<const Q: u8> Scalar for Gf<Q> {
    fn characteristic() -> u32 {
        Self::table().p as u32
    }

    fn try_inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Gf(Self::table().inv[self.0 as usize]))
        }
    }

    fn from_int(n: i64) -> Self {
        let p = Self::table().p as i64;
        // the prime subfield has indices 0..p under the polynomial encoding
        Gf(n.rem_euclid(p) as u8)
    }
}

impl<const Q: u8> FiniteField for Gf<Q> {
    const ORDER: u32 = Q as u32;

    fn from_index(index: u32) -> Option<Self> {
        let () = Self::SUPPORTED;
        (index < Q as u32).then_some(Gf(index as u8))
    }

    fn index(self) -> u32 {
        self.0 as u32
    }
}

/// Runtime element of a [`Field`]; remembers which field it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    q: u8,
    value: u8,
}

impl FieldElement {
    pub fn order(self) -> u32 {
        self.q as u32
    }

    pub fn value(self) -> u32 {
        self.value as u32
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// GF(q) with explicit tables, checked against the field axioms on construction.
#[derive(Debug, Clone)]
pub struct Field {
    q: u32,
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    // exp[k] = g^k for k in 0..q-1, log[exp[k]] = k; only for n > 1
    exp: Vec<u8>,
    log: Vec<u8>,
    mul: Vec<u8>,
}

impl Field {
    /// Builds GF(q) and runs the exhaustive axiom audit.
    pub fn new(q: u32) -> Result<Self, GfError> {
        let t = tables(q)?;
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for x in 0..qs {
            for y in 0..qs {
                add[x * qs + y] = t.add[x][y];
                mul[x * qs + y] = t.mul[x][y];
            }
        }
        let (exp, log) = if t.n > 1 {
            // x is the primitive element; its index is p
            let generator = t.p as usize;
            let mut exp = vec![0u8; qs - 1];
            let mut log = vec![0u8; qs];
            let mut acc = 1usize;
            for (k, slot) in exp.iter_mut().enumerate() {
                *slot = acc as u8;
                log[acc] = k as u8;
                acc = t.mul[acc][generator] as usize;
            }
            (exp, log)
        } else {
            (Vec::new(), Vec::new())
        };
        let field = Field {
            q,
            p: t.p as u32,
            n: t.n as u32,
            modulus: t.modulus[..=t.n as usize]
                .iter()
                .map(|&c| c as u32)
                .collect(),
            add,
            neg: t.neg[..qs].to_vec(),
            inv: t.inv[..qs].to_vec(),
            exp,
            log,
            mul,
        };
        field.audit()?;
        Ok(field)
    }

    /// Shared, lazily built instance for a supported order.
    pub fn get(q: u32) -> Result<&'static Field, GfError> {
        static FIELDS: [OnceLock<Field>; MAX_Q + 1] = [const { OnceLock::new() }; MAX_Q + 1];
        if !is_supported(q) {
            return Err(GfError::UnsupportedOrder(q));
        }
        let slot = &FIELDS[q as usize];
        if let Some(f) = slot.get() {
            return Ok(f);
        }
        let built = Field::new(q)?;
        Ok(slot.get_or_init(|| built))
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Coefficients of the defining polynomial from degree 0 upwards.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, GfError> {
        if index < self.q {
            Ok(FieldElement {
                q: self.q as u8,
                value: index as u8,
            })
        } else {
            Err(GfError::IndexOutOfRange { q: self.q, index })
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            q: self.q as u8,
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            q: self.q as u8,
            value: 1,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement {
            q: self.q as u8,
            value: i as u8,
        })
    }

    fn check(&self, x: FieldElement) -> Result<usize, GfError> {
        if x.q as u32 != self.q {
            Err(GfError::FieldMismatch {
                left: self.q,
                right: x.q as u32,
            })
        } else {
            Ok(x.value as usize)
        }
    }

    fn make(&self, value: u8) -> FieldElement {
        FieldElement {
            q: self.q as u8,
            value,
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        let (i, j) = (self.check(x)?, self.check(y)?);
        Ok(self.make(self.add[i * self.q as usize + j]))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.make(self.neg[self.check(x)?]))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        let minus_y = self.neg(y)?;
        self.add(x, minus_y)
    }

    /// Product; uses the log/exp tables when q is not prime.
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        let (i, j) = (self.check(x)?, self.check(y)?);
        if self.n == 1 {
            return Ok(self.make(self.mul[i * self.q as usize + j]));
        }
        if i == 0 || j == 0 {
            return Ok(self.zero());
        }
        let k = (self.log[i] as usize + self.log[j] as usize) % (self.q as usize - 1);
        Ok(self.make(self.exp[k]))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        let i = self.check(x)?;
        if i == 0 {
            return Err(GfError::DivisionByZero(self.q));
        }
        Ok(self.make(self.inv[i]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        let y_inv = self.inv(y)?;
        self.mul(x, y_inv)
    }

    pub fn pow(&self, x: FieldElement, exp: u64) -> Result<FieldElement, GfError> {
        self.check(x)?;
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(acc, x)?;
        }
        Ok(acc)
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        self.pow(x, self.p as u64)
    }

    /// Exhaustive check of the field axioms and of the agreement between the
    /// product table and the log/exp tables.
    pub fn audit(&self) -> Result<(), GfError> {
        let q = self.q;
        let fail = |axiom| Err(GfError::AxiomViolation { q, axiom });
        let els: Vec<_> = self.elements().collect();
        let (zero, one) = (self.zero(), self.one());
        for &x in &els {
            if self.add(x, zero)? != x || self.mul(x, one)? != x {
                return fail("identities");
            }
            if self.add(x, self.neg(x)?)? != zero {
                return fail("additive inverse");
            }
            if !x.is_zero() && self.mul(x, self.inv(x)?)? != one {
                return fail("multiplicative inverse");
            }
            for &y in &els {
                if self.add(x, y)? != self.add(y, x)? {
                    return fail("additive commutativity");
                }
                if self.mul(x, y)? != self.mul(y, x)? {
                    return fail("multiplicative commutativity");
                }
                let i = x.value as usize * q as usize + y.value as usize;
                if self.mul(x, y)? != self.make(self.mul[i]) {
                    return fail("log/exp agreement");
                }
                for &z in &els {
                    if self.add(self.add(x, y)?, z)? != self.add(x, self.add(y, z)?)? {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(x, y)?, z)? != self.mul(x, self.mul(y, z)?)? {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(x, self.add(y, z)?)?
                        != self.add(self.mul(x, y)?, self.mul(x, z)?)?
                    {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Addition in a runtime field.
pub fn fe_add(x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
    Field::get(x.order())?.add(x, y)
}

pub fn fe_mul(x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
    Field::get(x.order())?.mul(x, y)
}

pub fn fe_inv(x: FieldElement) -> Result<FieldElement, GfError> {
    Field::get(x.order())?.inv(x)
}
