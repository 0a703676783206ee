//! Arithmetic in F_q for prime and prime-power q.
//!
//! Elements are stored as integer indices `Σ coords[i]·p^i` in the polynomial
//! basis, so the prime field F_p is indexed by its residues and `0`/`1` are
//! always the additive and multiplicative identities. All operations go
//! through tables built once per field.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Field element as an index into the field tables.
pub type Elem = u32;

/// Shared handle to a validated field.
pub type Field = Arc<FieldSpec>;

/// Largest field order accepted unless the caller raises the cap.
pub const DEFAULT_Q_CAP: u32 = 32;

/// A validated finite field F_q with q = p^k.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length k+1. Absent for prime fields.
    modulus: Option<Vec<u32>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    phase: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if let Some(m) = &self.modulus {
            write!(f, "[{}]", poly_to_string(m))?;
        }
        Ok(())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

/// Character exponent: the value ω^e with ω = exp(2πi/p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent {
    pub e: u32,
    pub p: u32,
}

impl PhaseExponent {
    pub fn add(self, other: PhaseExponent) -> PhaseExponent {
        PhaseExponent { e: (self.e + other.e) % self.p, p: self.p }
    }
    pub fn neg(self) -> PhaseExponent {
        PhaseExponent { e: (self.p - self.e) % self.p, p: self.p }
    }
    /// ω^e as a complex number `(re, im)`.
    pub fn to_complex(self) -> (f64, f64) {
        let t = 2.0 * core::f64::consts::PI * (self.e as f64) / (self.p as f64);
        (libm::cos(t), libm::sin(t))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in default modulus for the non-prime orders that need one.
pub fn default_modulus(q: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match q {
        4 => &[1, 1, 1],
        8 => &[1, 1, 0, 1],
        9 => &[1, 0, 1],
        16 => &[1, 1, 0, 0, 1],
        25 => &[2, 0, 1],
        27 => &[1, 2, 0, 1],
        32 => &[1, 0, 1, 0, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// Splits q into (p, k) with q = p^k, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r == 1 {
        Some((p, k))
    } else {
        None
    }
}

pub fn poly_to_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && i > 0 { String::new() } else { format!("{a}") };
        let t = match i {
            0 => format!("{a}"),
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        String::from("0")
    } else {
        terms.join("+")
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division against every monic polynomial of degree
/// 1..=deg/2. Returns a witness factor when reducible.
pub fn find_factor(m: &[u32], p: u32) -> Option<Vec<u32>> {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = vec![0u32; d + 1];
            let mut x = idx;
            for c in f.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            f[d] = 1;
            if trim(poly_rem(m, &f, p)).iter().all(|&c| c == 0) {
                return Some(f);
            }
        }
    }
    None
}

/// Builds F_{p^k}. For k > 1 the modulus defaults to the built-in table.
pub fn field_make(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
    field_make_capped(p, k, modulus, DEFAULT_Q_CAP)
}

pub fn field_make_capped(p: u32, k: u32, modulus: Option<&[u32]>, cap: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} must be prime")));
    }
    if k < 1 {
        return Err(Error::Precondition(String::from("k >= 1")));
    }
    let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    if q64 > cap as u64 {
        return Err(Error::CapExceeded { what: String::from("field order q"), size: q64 as u128, cap: cap as u128 });
    }
    let q = q64 as u32;
    let modulus = if k == 1 {
        if let Some(m) = modulus {
            if m.len() != 2 || m[1] != 1 {
                return Err(Error::Precondition(String::from("modulus must be monic of degree k")));
            }
        }
        None
    } else {
        let m = match modulus {
            Some(m) => m.to_vec(),
            None => default_modulus(q)
                .ok_or_else(|| Error::Unsupported(format!("no built-in modulus for q = {q}; pass one explicitly")))?,
        };
        if m.len() != k as usize + 1 || m[k as usize] != 1 {
            return Err(Error::Precondition(String::from("modulus must be monic of degree k")));
        }
        if m.iter().any(|&c| c >= p) {
            return Err(Error::Precondition(String::from("modulus coefficients must lie in [0, p)")));
        }
        if let Some(f) = find_factor(&m, p) {
            return Err(Error::Reducible(format!("{} has factor {}", poly_to_string(&m), poly_to_string(&f))));
        }
        Some(m)
    };
    Ok(Arc::new(build_tables(p, k, q, modulus)))
}

/// Field of order q using the built-in modulus table.
pub fn field_from_q(q: u32) -> Result<Field> {
    field_from_q_capped(q, DEFAULT_Q_CAP)
}

pub fn field_from_q_capped(q: u32, cap: u32) -> Result<Field> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Precondition(format!("q = {q} must be a prime power")))?;
    field_make_capped(p, k, None, cap)
}

fn build_tables(p: u32, k: u32, q: u32, modulus: Option<Vec<u32>>) -> FieldSpec {
    let qs = q as usize;
    let coords = |x: u32| -> Vec<u32> {
        let mut v = vec![0u32; k as usize];
        let mut y = x;
        for c in v.iter_mut() {
            *c = y % p;
            y /= p;
        }
        v
    };
    let index = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
    let mut add = vec![0; qs * qs];
    let mut mul = vec![0; qs * qs];
    let mut neg = vec![0; qs];
    let mut inv = vec![0; qs];
    let mut phase = vec![0; qs];
    for a in 0..q {
        let ca = coords(a);
        neg[a as usize] = index(&ca.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
        phase[a as usize] = ca.iter().sum::<u32>() % p;
        for b in 0..q {
            let cb = coords(b);
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = index(&s);
            let mut prod = vec![0u32; 2 * k as usize - 1];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let red = match &modulus {
                Some(m) => poly_rem(&prod, m, p),
                None => prod,
            };
            let mut r = red;
            r.resize(k as usize, 0);
            mul[(a * q + b) as usize] = index(&r);
        }
    }
    for a in 1..q {
        for b in 1..q {
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b;
                break;
            }
        }
    }
    FieldSpec { p, k, q, modulus, add, mul, neg, inv, phase }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }
    /// Designation string in the form `q=9,mod=x^2+1`.
    pub fn designation(&self) -> String {
        match &self.modulus {
            Some(m) => format!("q={},mod={}", self.q, poly_to_string(m)),
            None => format!("q={}", self.q),
        }
    }
    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }
    /// Inverse without the zero check; callers guarantee `a != 0`.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }
    /// Σ coords(x) mod p.
    #[inline]
    pub fn phase(&self, a: Elem) -> u32 {
        self.phase[a as usize]
    }
    pub fn phase_of(&self, a: Elem) -> PhaseExponent {
        PhaseExponent { e: self.phase(a), p: self.p }
    }
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let mut v = vec![0u32; self.k as usize];
        let mut y = a;
        for c in v.iter_mut() {
            *c = y % self.p;
            y /= self.p;
        }
        v
    }
    pub fn from_coords(&self, c: &[u32]) -> Result<Elem> {
        if c.len() != self.k as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::Precondition(format!("coordinates must be {} residues mod {}", self.k, self.p)));
        }
        Ok(c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }
    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.q
    }
    /// Embeds an integer via its residue mod p.
    pub fn from_int(&self, x: i64) -> Elem {
        x.rem_euclid(self.p as i64) as Elem
    }
}

/// A field element carrying its field, for checked mixed-field arithmetic.
#[derive(Clone)]
pub struct FieldElem {
    pub field: Field,
    pub v: Elem,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field.coords(self.v))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.v == other.v
    }
}
impl Eq for FieldElem {}

/// Operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

impl FieldElem {
    pub fn new(field: &Field, v: Elem) -> Result<FieldElem> {
        if v >= field.q() {
            return Err(Error::Precondition(format!("element index {v} < q = {}", field.q())));
        }
        Ok(FieldElem { field: field.clone(), v })
    }
    pub fn from_coords(field: &Field, c: &[u32]) -> Result<FieldElem> {
        Ok(FieldElem { field: field.clone(), v: field.from_coords(c)? })
    }
    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.v)
    }
    pub fn phase(&self) -> PhaseExponent {
        self.field.phase_of(self.v)
    }
    fn same(&self, o: &FieldElem) -> Result<()> {
        if Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
    pub fn add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.same(o)?;
        Ok(FieldElem { field: self.field.clone(), v: self.field.add(self.v, o.v) })
    }
    pub fn sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.same(o)?;
        Ok(FieldElem { field: self.field.clone(), v: self.field.sub(self.v, o.v) })
    }
    pub fn mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.same(o)?;
        Ok(FieldElem { field: self.field.clone(), v: self.field.mul(self.v, o.v) })
    }
    pub fn neg(&self) -> FieldElem {
        FieldElem { field: self.field.clone(), v: self.field.neg(self.v) }
    }
    pub fn inv(&self) -> Result<FieldElem> {
        Ok(FieldElem { field: self.field.clone(), v: self.field.inv(self.v)? })
    }
}

/// Binary/unary dispatcher; `b` is ignored for `Inv` and `Neg`.
pub fn arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Inv => a.inv(),
        ArithOp::Neg => Ok(a.neg()),
    }
}

/// Parses a polynomial such as `x^2+x+1` or `2x^3 + x + 1` into low-first
/// coefficients reduced mod p.
pub fn parse_poly(s: &str, p: u32) -> Result<Vec<u32>> {
    let bad = || Error::Precondition(format!("cannot parse polynomial '{s}'"));
    let mut coeffs: Vec<u32> = Vec::new();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad());
    }
    for term in cleaned.split('+') {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, deg) = if let Some(pos) = term.find('x') {
            let c = &term[..pos];
            let c = c.trim_end_matches('*');
            let coef: u32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
            let rest = &term[pos + 1..];
            let deg: usize = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            (coef, deg)
        } else {
            (term.parse::<u32>().map_err(|_| bad())?, 0)
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = (coeffs[deg] + coef) % p;
    }
    Ok(trim(coeffs))
}
