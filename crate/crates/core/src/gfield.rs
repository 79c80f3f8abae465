//! Exact arithmetic in `F_q` for prime `q` and binary extension fields `GF(2^k)`.
//!
//! Elements are canonical integers in `[0, q)`. For extension fields the
//! integer is the bit pattern of the residue polynomial, and arithmetic is
//! carried out modulo a fixed irreducible reduction polynomial. The default
//! reduction polynomial for each `k` is the lexicographically smallest
//! irreducible of degree `k` (as a bit integer), so serialized codes are
//! portable across implementations.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest supported prime order.
pub const MAX_PRIME: u64 = 1 << 16;
/// Largest supported binary extension degree.
pub const MAX_BINARY_K: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is neither a prime nor a supported power of two")]
    NonPrimePower(u64),
    #[error("reduction polynomial {poly:#b} factors over GF(2)")]
    ReduciblePoly { poly: u32 },
    #[error("reduction polynomial {poly:#b} does not have degree {expected}")]
    WrongPolyDegree { poly: u32, expected: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("binary operation is missing its second operand")]
    MissingOperand,
}

/// A field element, stored as its canonical integer in `[0, q)`.
///
/// `Felt`s carry no field reference; all arithmetic goes through the
/// [`Field`] that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(pub(crate) u32);

impl Felt {
    /// Canonical integer value in `[0, q)`.
    pub fn val(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
enum Kind {
    Prime,
    Binary {
        poly: u32,
        // q x q multiplication table and inverse table; k <= 8 keeps these small
        mul: Vec<u16>,
        inv: Vec<u16>,
    },
}

#[derive(Debug)]
struct Inner {
    q: u32,
    kind: Kind,
}

/// A finite field `F_q`. Cheap to clone and safe to share across threads;
/// all arithmetic is pure.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.poly() == other.poly()
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly() {
            Some(p) => write!(f, "GF({}, poly={:#b})", self.order(), p),
            None => write!(f, "GF({})", self.order()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Degree of a GF(2) polynomial given as a bit pattern; `None` for zero.
fn poly_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

/// Remainder of carry-less division of `a` by `b` over GF(2).
fn poly_mod(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Carry-less product of two GF(2) polynomials.
fn poly_mul(a: u32, b: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

/// A degree-`k` polynomial over GF(2) is irreducible iff it has no factor
/// of degree between 1 and `k/2`; checked by exhaustive trial division.
fn poly_is_irreducible(p: u32) -> bool {
    let k = match poly_degree(p) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if p & 1 == 0 {
        // x divides p
        return k == 1;
    }
    for d in 1..=(k / 2) {
        for cand in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_mod(p, cand) == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest irreducible polynomial of degree `k`.
pub fn default_reduction_poly(k: u32) -> u32 {
    assert!((1..=MAX_BINARY_K).contains(&k));
    ((1u32 << k)..(1u32 << (k + 1)))
        .find(|&p| poly_is_irreducible(p))
        .expect("an irreducible polynomial of each degree exists")
}

impl Field {
    /// Field of order `q` with the default reduction polynomial when
    /// `q = 2^k`. Prime orders up to 2^16 and binary extensions up to
    /// `GF(2^8)` are supported.
    pub fn new(q: u64) -> Result<Field, FieldError> {
        if is_prime(q) && q <= MAX_PRIME {
            return Ok(Field {
                inner: Arc::new(Inner {
                    q: q as u32,
                    kind: Kind::Prime,
                }),
            });
        }
        if q.is_power_of_two() {
            let k = q.trailing_zeros();
            if (1..=MAX_BINARY_K).contains(&k) {
                return Field::binary(k, default_reduction_poly(k));
            }
        }
        Err(FieldError::NonPrimePower(q))
    }

    /// `GF(2^k)` with an explicit reduction polynomial (bit pattern, degree `k`).
    pub fn binary(k: u32, poly: u32) -> Result<Field, FieldError> {
        if !(1..=MAX_BINARY_K).contains(&k) {
            return Err(FieldError::NonPrimePower(1u64 << k));
        }
        if poly_degree(poly) != Some(k) {
            return Err(FieldError::WrongPolyDegree { poly, expected: k });
        }
        if !poly_is_irreducible(poly) {
            return Err(FieldError::ReduciblePoly { poly });
        }
        if k == 1 {
            // GF(2) is the prime field; arithmetic is identical
            return Ok(Field {
                inner: Arc::new(Inner {
                    q: 2,
                    kind: Kind::Prime,
                }),
            });
        }
        let q = 1usize << k;
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in a..q {
                let prod = poly_mod(poly_mul(a as u32, b as u32), poly) as u16;
                mul[a * q + b] = prod;
                mul[b * q + a] = prod;
            }
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        Ok(Field {
            inner: Arc::new(Inner {
                q: q as u32,
                kind: Kind::Binary { poly, mul, inv },
            }),
        })
    }

    /// Same as [`Field::new`] but with an optional explicit reduction
    /// polynomial (`poly = 0` or `None` selects the default).
    pub fn make(q: u64, poly: Option<u32>) -> Result<Field, FieldError> {
        match poly {
            None | Some(0) => Field::new(q),
            Some(p) => {
                if q.is_power_of_two() && q > 1 {
                    Field::binary(q.trailing_zeros(), p)
                } else {
                    Err(FieldError::NonPrimePower(q))
                }
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn characteristic(&self) -> u32 {
        match self.inner.kind {
            Kind::Prime => self.inner.q,
            Kind::Binary { .. } => 2,
        }
    }

    /// Reduction polynomial for extension fields, `None` for prime fields.
    pub fn poly(&self) -> Option<u32> {
        match self.inner.kind {
            Kind::Prime => None,
            Kind::Binary { poly, .. } => Some(poly),
        }
    }

    pub fn zero(&self) -> Felt {
        Felt(0)
    }

    pub fn one(&self) -> Felt {
        Felt(1)
    }

    /// Canonical element from an integer (reduced mod `q`).
    pub fn elt(&self, v: u64) -> Felt {
        Felt((v % self.inner.q as u64) as u32)
    }

    /// `-1` as a field element.
    pub fn minus_one(&self) -> Felt {
        self.neg(self.one())
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.inner.q).map(Felt)
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        match self.inner.kind {
            Kind::Prime => {
                let s = a.0 as u64 + b.0 as u64;
                self.elt(s)
            }
            Kind::Binary { .. } => Felt(a.0 ^ b.0),
        }
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Felt) -> Felt {
        match self.inner.kind {
            Kind::Prime => {
                if a.0 == 0 {
                    a
                } else {
                    Felt(self.inner.q - a.0)
                }
            }
            Kind::Binary { .. } => a,
        }
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        match &self.inner.kind {
            Kind::Prime => Felt(((a.0 as u64 * b.0 as u64) % self.inner.q as u64) as u32),
            Kind::Binary { mul, .. } => {
                Felt(mul[a.0 as usize * self.inner.q as usize + b.0 as usize] as u32)
            }
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        match &self.inner.kind {
            Kind::Prime => {
                // extended Euclid on (a, q)
                let (mut r0, mut r1) = (a.0 as i64, self.inner.q as i64);
                let (mut s0, mut s1) = (1i64, 0i64);
                while r1 != 0 {
                    let quot = r0 / r1;
                    (r0, r1) = (r1, r0 - quot * r1);
                    (s0, s1) = (s1, s0 - quot * s1);
                }
                debug_assert_eq!(r0, 1);
                let q = self.inner.q as i64;
                Ok(Felt(s0.rem_euclid(q) as u32))
            }
            Kind::Binary { inv, .. } => Ok(Felt(inv[a.0 as usize] as u32)),
        }
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatch entry point for all arithmetic ops; binary ops require `b`.
    pub fn arith(&self, op: ArithOp, a: Felt, b: Option<Felt>) -> Result<Felt, FieldError> {
        let need_b = || b.ok_or(FieldError::MissingOperand);
        match op {
            ArithOp::Add => Ok(self.add(a, need_b()?)),
            ArithOp::Sub => Ok(self.sub(a, need_b()?)),
            ArithOp::Mul => Ok(self.mul(a, need_b()?)),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }
}

/// Arithmetic operation selector for [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

/// Serialized form of a field: `{"q": q, "poly": p}` with `p = 0` for
/// prime fields.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldJson {
    pub q: u64,
    #[serde(default)]
    pub poly: u32,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> Self {
        FieldJson {
            q: f.order() as u64,
            poly: f.poly().unwrap_or(0),
        }
    }
}

impl TryFrom<&FieldJson> for Field {
    type Error = FieldError;
    fn try_from(j: &FieldJson) -> Result<Field, FieldError> {
        Field::make(j.q, Some(j.poly))
    }
}
