//! Exact arithmetic in prime-power fields F_q.
//!
//! Elements are stored as their canonical index in `[0, q)`: the base-p digits
//! of the index are the coefficients of the element's polynomial representative,
//! constant term first. For prime fields the index is the residue itself.
//!
//! Extension fields use the lexicographically smallest monic irreducible
//! modulus, compared coefficient by coefficient starting at the constant term,
//! so the same `q` always yields the same encoding.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Multiplication tables are precomputed up to this order.
const TABLE_LIMIT: u32 = 256;

/// A field element, stored as its canonical index in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felt(pub u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, length m + 1. `None` for prime fields.
    modulus: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// A finite field F_q with q = p^m.
///
/// Cheap to clone; the tables live behind an `Arc`.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl FieldSpec {
    /// Builds F_q with the canonical modulus.
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { q: q as u64, cap: MAX_FIELD_ORDER as u64 });
        }
        let p = p as u32;
        let modulus = (m > 1).then(|| smallest_irreducible(p, m));
        Ok(Self::build(p, m, modulus))
    }

    /// Builds F_{p^m} from an explicit monic modulus (constant term first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if prime_power(p as u64) != Some((p as u64, 1)) {
            return Err(Error::NotPrimePower(p as u64));
        }
        if modulus.len() < 3 {
            return Err(Error::InvalidModulus("modulus must have degree >= 2".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge { q, cap: MAX_FIELD_ORDER as u64 });
        }
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("coefficients must lie in [0,p) and the modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        Ok(Self::build(p, m, Some(modulus)))
    }

    fn build(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Self {
        let q = p.pow(m);
        let mut inner = Inner { p, m, q, modulus, mul_table: None, add_table: None, inv_table: None };
        if q <= TABLE_LIMIT {
            let mut mul = vec![0; (q * q) as usize];
            let mut add = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    mul[(a * q + b) as usize] = raw_mul(&inner, a, b);
                    add[(a * q + b) as usize] = raw_add(&inner, a, b);
                }
            }
            let mut inv = vec![0; q as usize];
            for a in 1..q {
                inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field has inverses");
            }
            inner.mul_table = Some(mul);
            inner.add_table = Some(add);
            inner.inv_table = Some(inv);
        }
        FieldSpec(Arc::new(inner))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    /// Validates an index and wraps it.
    pub fn elem(&self, index: u32) -> Result<Felt> {
        if index < self.0.q {
            Ok(Felt(index))
        } else {
            Err(Error::ElementOutOfRange { index: index as u64, q: self.0.q as u64 })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.0.q).map(Felt)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let q = self.0.q;
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return Felt(if s >= q { s - q } else { s });
        }
        if self.0.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        match &self.0.add_table {
            Some(t) => Felt(t[(a.0 * q + b.0) as usize]),
            None => Felt(raw_add(&self.0, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if self.0.m == 1 {
            return Felt(if a.0 == 0 { 0 } else { self.0.q - a.0 });
        }
        let p = self.0.p;
        Felt(map_digits(a.0, p, self.0.m, |d| (p - d) % p))
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        match &self.0.mul_table {
            Some(t) => Felt(t[(a.0 * self.0.q + b.0) as usize]),
            None => Felt(raw_mul(&self.0, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.inv_table {
            Some(t) => Felt(t[a.0 as usize]),
            None => self.pow(a, (self.0.q - 2) as u64),
        })
    }

    pub fn pow(&self, a: Felt, mut e: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficients of the polynomial representative, constant term first.
    pub fn digits(&self, a: Felt) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut x = a.0;
        for _ in 0..self.0.m {
            out.push(x % self.0.p);
            x /= self.0.p;
        }
        out
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { p: self.0.p, m: self.0.m, modulus: self.0.modulus.clone() }
    }

    pub fn from_json(json: &FieldJson) -> Result<Self> {
        if json.m == 0 {
            return Err(Error::InvalidModulus("extension degree must be >= 1".into()));
        }
        match (&json.modulus, json.m) {
            (None, 1) => {
                if prime_power(json.p as u64) != Some((json.p as u64, 1)) {
                    return Err(Error::NotPrimePower(json.p as u64));
                }
                FieldSpec::new(json.p)
            }
            (None, m) => {
                let q = (json.p as u64).checked_pow(m).unwrap_or(u64::MAX);
                if prime_power(json.p as u64) != Some((json.p as u64, 1)) {
                    return Err(Error::NotPrimePower(json.p as u64));
                }
                if q > MAX_FIELD_ORDER as u64 {
                    return Err(Error::FieldTooLarge { q, cap: MAX_FIELD_ORDER as u64 });
                }
                FieldSpec::new(q as u32)
            }
            (Some(modulus), m) => {
                if modulus.len() as u32 != m + 1 {
                    return Err(Error::InvalidModulus(format!("modulus length {} does not match m = {m}", modulus.len())));
                }
                FieldSpec::with_modulus(json.p, modulus.clone())
            }
        }
    }
}

/// Serialized form of a field: `{"p": .., "m": .., "modulus": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// An element paired with its field, for checked mixed-field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub field: FieldSpec,
    pub value: Felt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl Elem {
    pub fn new(field: &FieldSpec, index: u32) -> Result<Self> {
        Ok(Elem { value: field.elem(index)?, field: field.clone() })
    }

    /// Applies `op`; `Neg` ignores `other` except for the field check.
    pub fn arith(&self, other: &Elem, op: ArithOp) -> Result<Elem> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Neg => f.neg(self.value),
        };
        Ok(Elem { field: f.clone(), value })
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem { field: self.field.clone(), value: self.field.inv(self.value)? })
    }
}

fn map_digits(mut x: u32, p: u32, m: u32, f: impl Fn(u32) -> u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += f(x % p) * scale;
        x /= p;
        scale *= p;
    }
    out
}

fn raw_add(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, m) = (inner.p, inner.m);
    if m == 1 {
        return (a + b) % p;
    }
    let (mut x, mut y) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((x % p + y % p) % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
    }
    out
}

fn raw_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    match &inner.modulus {
        None => ((a as u64 * b as u64) % p) as u32,
        Some(modulus) => {
            let m = inner.m as usize;
            let da = to_digits(a, inner.p, m);
            let db = to_digits(b, inner.p, m);
            let mut prod = vec![0u64; 2 * m - 1];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                }
            }
            // reduce using x^m = -(c_0 + ... + c_{m-1} x^{m-1})
            for deg in (m..prod.len()).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (k, &mk) in modulus[..m].iter().enumerate() {
                    let idx = deg - m + k;
                    prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
                }
            }
            prod[..m].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
        }
    }
}

fn to_digits(mut x: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0; m];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

/// Remainder of `a` modulo the monic `b` over F_p; both constant term first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p64 - lead) * bk as u64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = to_digits(idx as u32, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `m`, ordering coefficient tuples
/// lexicographically from the constant term.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        // most significant digit of idx = constant term
        let mut coeffs = to_digits(idx as u32, p, m as usize);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
