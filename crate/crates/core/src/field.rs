//! Finite fields `F_q`, `q = p^e <= 2^16`.
//!
//! Elements are stored as their canonical integer encoding: the coefficients
//! of the polynomial representative packed as base-`p` digits, constant term
//! least significant. For `e = 1` this is just the residue.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;
/// Full addition/multiplication tables are kept up to this order.
const TABLE_LIMIT: u32 = 256;

/// Serializable description of a field: `{"p", "e", "modulus"}`.
///
/// `modulus` lists coefficients from the constant term up, including the
/// leading 1. It is omitted for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u16>>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u16>>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    log: Vec<u32>,
    exp: Vec<u16>,
    add_tab: Option<Vec<u16>>,
    mul_tab: Option<Vec<u16>>,
}

/// A finite field. Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.q),
            Some(m) => write!(f, "GF({}^{}, {:?})", self.0.p, self.0.e, m),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

/// Conway-style moduli shipped with the crate.
pub fn builtin_modulus(q: u32) -> Option<Vec<u16>> {
    Some(match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![1, 0, 1],
        16 => vec![1, 1, 0, 0, 1],
        25 => vec![2, 0, 1],
        27 => vec![1, 2, 0, 1],
        _ => return None,
    })
}

// polynomial helpers over F_p, coefficient vectors low -> high

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut k) = (a as u64 % p as u64, p as u64 - 2);
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn slow_mul(a: u32, b: u32, p: u32, e: u32, m: &[u32]) -> u32 {
    if e == 1 {
        return (a as u64 * b as u64 % p as u64) as u32;
    }
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let mut prod = vec![0u32; 2 * e as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(e as usize, 0);
    pack(&r, p)
}

fn slow_add(a: u32, b: u32, p: u32, e: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    let (mut a, mut b) = (a, b);
    for _ in 0..e {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// Builds `F_{p^e}`. For `e > 1` a monic irreducible `modulus` of degree
    /// `e` is needed; `None` falls back to the built-in table.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u16>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let q64 = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if e == 0 || q64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = if e == 1 {
            None
        } else {
            let m = match modulus {
                Some(m) => m,
                None => builtin_modulus(q).ok_or(Error::MissingModulus(q64))?,
            };
            let mut m32: Vec<u32> = m.iter().map(|&c| c as u32).collect();
            if m32.iter().any(|&c| c >= p) {
                return Err(Error::ReducibleModulus(m));
            }
            poly_trim(&mut m32);
            if m32.len() != e as usize + 1 || !is_irreducible(&m32, p) {
                return Err(Error::ReducibleModulus(m));
            }
            // normalise to monic
            let li = inv_mod(m32[e as usize], p);
            Some(m32.iter().map(|&c| (c * li % p) as u16).collect::<Vec<u16>>())
        };
        let m32: Vec<u32> =
            modulus.as_ref().map(|m| m.iter().map(|&c| c as u32).collect()).unwrap_or_default();

        // primitive element
        let order = q - 1;
        let factors = prime_factors(order);
        let pow = |g: u32, mut k: u32| {
            let (mut r, mut b) = (1u32, g);
            while k > 0 {
                if k & 1 == 1 {
                    r = slow_mul(r, b, p, e, &m32);
                }
                b = slow_mul(b, b, p, e, &m32);
                k >>= 1;
            }
            r
        };
        let g = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0u16; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u16;
            log[x as usize] = i as u32;
            x = slow_mul(x, g, p, e, &m32);
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| pack(&digits(a, p, e).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p) as u16)
            .collect();
        let mut inv = vec![0u16; q as usize];
        for a in 1..q {
            inv[a as usize] = exp[((order - log[a as usize]) % order) as usize];
        }
        let (add_tab, mul_tab) = if q <= TABLE_LIMIT {
            let mut at = vec![0u16; (q * q) as usize];
            let mut mt = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    at[(a * q + b) as usize] = slow_add(a, b, p, e) as u16;
                    mt[(a * q + b) as usize] = if a == 0 || b == 0 {
                        0
                    } else {
                        exp[((log[a as usize] + log[b as usize]) % order) as usize]
                    };
                }
            }
            (Some(at), Some(mt))
        } else {
            (None, None)
        };
        Ok(FiniteField(Arc::new(Inner { p, e, q, modulus, neg, inv, log, exp, add_tab, mul_tab })))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Field of order `q` using the built-in modulus when `q` is not prime.
    pub fn with_order(q: u64) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q as u32))?;
        Self::new(p, e, None)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        let m = d.modulus.clone().filter(|m| !m.is_empty());
        Self::new(d.p, d.e, m)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, e: self.0.e, modulus: self.0.modulus.clone() }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> Option<&[u16]> {
        self.0.modulus.as_deref()
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = u16> {
        1..self.0.q as u16
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        let f = &*self.0;
        if let Some(t) = &f.add_tab {
            return t[a as usize * f.q as usize + b as usize];
        }
        if f.e == 1 {
            return ((a as u32 + b as u32) % f.p) as u16;
        }
        slow_add(a as u32, b as u32, f.p, f.e) as u16
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        let f = &*self.0;
        if let Some(t) = &f.mul_tab {
            return t[a as usize * f.q as usize + b as usize];
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (f.log[a as usize] + f.log[b as usize]) % (f.q - 1);
        f.exp[k as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: u16, k: u64) -> u16 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let order = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64 * (k % order) % order;
        self.0.exp[l as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u16 {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        self.check(value)?;
        Ok(FieldElement { field: self.clone(), value: value as u16 })
    }

    pub fn check(&self, value: u64) -> Result<()> {
        if value >= self.0.q as u64 {
            return Err(Error::InvalidElement { value, q: self.0.q });
        }
        Ok(())
    }
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    value: u16,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary arithmetic on elements of the same field.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value)?,
    };
    Ok(FieldElement { field: f.clone(), value })
}

impl FieldElement {
    pub fn value(&self) -> u16 {
        self.value
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        arith(self, o, ArithOp::Add)
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        arith(self, o, ArithOp::Sub)
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        arith(self, o, ArithOp::Mul)
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        arith(self, o, ArithOp::Div)
    }
    pub fn neg(&self) -> Self {
        FieldElement { field: self.field.clone(), value: self.field.neg(self.value) }
    }
    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { field: self.field.clone(), value: v })
    }
}
