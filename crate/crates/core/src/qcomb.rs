//! Exact q-combinatorics: Gaussian binomials, the Cauchy binomial sum and
//! counts of matrices of a given rank.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// Largest n accepted by [`QBinomialTable`].
pub const QBINOM_TABLE_MAX_N: i64 = 64;

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(x: BigInt) -> BigRat {
    BigRat::from_integer(x)
}

/// q^e as a big integer (e ≥ 0).
pub fn qpow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// q^e as an exact rational for any integer e.
pub fn qpow_rat(q: u64, e: i64) -> BigRat {
    if e >= 0 {
        rat_int(qpow(q, e as u64))
    } else {
        BigRat::new(BigInt::one(), qpow(q, (-e) as u64))
    }
}

/// C(i, 2) for i ≥ 0.
pub fn choose2(i: i64) -> i64 {
    i * (i - 1) / 2
}

/// Gaussian binomial (n choose m)_q, zero when m < 0, n < 0 or m > n.
pub fn gauss_binomial(n: i64, m: i64, q: u64) -> BigInt {
    if n < 0 || m < 0 || m > n {
        return BigInt::zero();
    }
    let m = m.min(n - m);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= qpow(q, (n - i) as u64) - 1;
        den *= qpow(q, (i + 1) as u64) - 1;
    }
    num / den
}

/// Memoized Gaussian binomials for a fixed q.
#[derive(Debug, Clone)]
pub struct QBinomialTable {
    q: u64,
    memo: BTreeMap<(i64, i64), BigInt>,
}

impl QBinomialTable {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Precondition("q >= 2".into()));
        }
        Ok(QBinomialTable { q, memo: BTreeMap::new() })
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn get(&mut self, n: i64, m: i64) -> Result<BigInt> {
        if n > QBINOM_TABLE_MAX_N {
            return Err(Error::CapExceeded {
                what: "q-binomial table n".into(),
                size: n as u128,
                cap: QBINOM_TABLE_MAX_N as u128,
            });
        }
        if n < 0 || m < 0 || m > n {
            return Ok(BigInt::zero());
        }
        let key = (n, m.min(n - m));
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = gauss_binomial(n, m, self.q);
        self.memo.insert(key, v.clone());
        Ok(v)
    }
    pub fn len(&self) -> usize {
        self.memo.len()
    }
    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// Horner evaluation of a polynomial with low-first coefficients.
pub fn poly_eval(coeffs: &[BigRat], x: &BigRat) -> BigRat {
    let mut acc = BigRat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Σ_{i=0}^{n} (−1)^i q^{C(i,2)} (n choose i)_q g(q^{−i}).
///
/// Vanishes whenever deg g < n.
pub fn cauchy_residual(n: i64, q: u64, g: &[BigRat]) -> BigRat {
    let mut total = BigRat::zero();
    for i in 0..=n {
        let term = rat_int(gauss_binomial(n, i, q) * qpow(q, choose2(i) as u64))
            * poly_eval(g, &qpow_rat(q, -i));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Π_{i=0}^{r-1} (q^a − q^i).
pub fn falling_qprod(q: u64, a: i64, r: i64) -> BigInt {
    let qa = qpow(q, a.max(0) as u64);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= &qa - qpow(q, i as u64);
    }
    acc
}

/// Number of n×m matrices over F_q of rank r.
pub fn count_rank_matrices(n: i64, m: i64, r: i64, q: u64) -> BigInt {
    if r < 0 || n < 0 || m < 0 || r > n.min(m) {
        return BigInt::zero();
    }
    gauss_binomial(n, r, q) * falling_qprod(q, m, r)
}

/// |GL_n(F_q)|.
pub fn count_nonsingular(n: i64, q: u64) -> BigInt {
    count_rank_matrices(n, n, n, q)
}

/// Π_{i∈I} (1 − x^{−i}).
pub fn prod_one_minus(x: u64, set: &[u32]) -> BigRat {
    let mut acc = BigRat::one();
    for &i in set {
        acc *= BigRat::one() - qpow_rat(x, -(i as i64));
    }
    acc
}

/// Base-2 logarithm of a positive big integer.
pub fn log2_bigint(x: &BigInt) -> f64 {
    assert!(x.sign() == Sign::Plus, "log2 of nonpositive integer");
    let bits = x.bits();
    if bits <= 60 {
        return libm::log2(x.to_f64().unwrap());
    }
    let shift = bits - 60;
    let top: BigInt = x >> shift;
    libm::log2(top.to_f64().unwrap()) + shift as f64
}

/// Base-2 logarithm of a positive rational.
pub fn log2_rat(x: &BigRat) -> f64 {
    log2_bigint(x.numer()) - log2_bigint(x.denom())
}

/// Nearest double to an exact rational, robust to huge numerators and
/// denominators.
pub fn rat_to_f64(x: &BigRat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let neg = x.is_negative();
    let n = x.numer().abs();
    let d = x.denom().clone();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Scale so the integer quotient carries about 64 significant bits.
    let shift = 64 - (nb - db);
    let (num, den) = if shift >= 0 { (n << shift as usize, d) } else { (n, d << (-shift) as usize) };
    let (quo, _) = num.div_rem(&den);
    let v = libm::ldexp(quo.to_f64().unwrap(), -(shift as i32));
    if neg {
        -v
    } else {
        v
    }
}

/// Converts a double with exactly representable value into a rational.
pub fn f64_to_rat(x: f64) -> Option<BigRat> {
    BigRat::from_float(x)
}

/// Largest Gaussian binomial over k for fixed n, useful for sizing.
pub fn max_gauss_binomial(n: i64, q: u64) -> BigInt {
    (0..=n).map(|k| gauss_binomial(n, k, q)).max().unwrap_or_else(BigInt::zero)
}

/// Exact square root of a rational when it is a perfect square.
pub fn rat_sqrt_exact(x: &BigRat) -> Option<BigRat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRat::new(n, d))
    } else {
        None
    }
}

/// Absolute value sum ‖v‖₁.
pub fn l1(v: &[BigRat]) -> BigRat {
    v.iter().fold(BigRat::zero(), |acc, x| acc + x.abs())
}

/// Divided-difference degree test: the smallest d such that the values at the
/// given nodes agree with a polynomial of degree ≤ d.
pub fn interpolation_degree(nodes: &[BigRat], values: &[BigRat]) -> Option<usize> {
    let n = nodes.len();
    if n == 0 || n != values.len() {
        return None;
    }
    let mut table: Vec<BigRat> = values.to_vec();
    let mut top: Vec<BigRat> = Vec::with_capacity(n);
    top.push(table[0].clone());
    for level in 1..n {
        let mut next = Vec::with_capacity(n - level);
        for i in 0..n - level {
            let diff = &table[i + 1] - &table[i];
            let den = &nodes[i + level] - &nodes[i];
            next.push(diff / den);
        }
        top.push(next[0].clone());
        table = next;
    }
    let mut deg = 0;
    for (i, c) in top.iter().enumerate() {
        if !c.is_zero() {
            deg = i;
        }
    }
    Some(deg)
}
