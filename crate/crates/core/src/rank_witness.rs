//! Dual witnesses for the matrix rank problem: the quadrant probabilities
//! P_n, the character expectations Γ_n, the univariate objects ζ and φ, the
//! dual matrix E_φ with its closed-form spectrum, and the resulting bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dual::DualMatrix;
use crate::error::{require, Error, Result};
use crate::gf::Field;
use crate::matq::{add_indices, enumerate_rank, matrix_space_size, rank_table};
use crate::numeric::{singular_values, Dense};
use crate::qcomb::{
    choose2, count_rank_matrices, falling_qprod, gauss_binomial, l1, log2_bigint, log2_rat, qpow, qpow_rat,
    rat_int, rat_to_f64, BigRat,
};
use crate::spectrum::{ExactValue, SpectrumReport};

/// Build guard for dense E_φ: q^{n²} ≤ this.
pub const E_PHI_DENSE_CAP: u128 = 4096;

/// P_n(s,t,r): probability that the upper-left s×t block of a uniform
/// nonsingular n×n matrix has rank r.
pub fn p_n(n: i64, s: i64, t: i64, r: i64, q: u64) -> Result<BigRat> {
    require(n >= 1, "n >= 1")?;
    require((0..=n).contains(&s) && (0..=n).contains(&t) && (0..=n).contains(&r), "0 <= s, t, r <= n")?;
    if r > s.min(t) || r < s + t - n {
        return Ok(BigRat::zero());
    }
    let num = qpow(q, (r * (n - t)) as u64)
        * gauss_binomial(s, r, q)
        * falling_qprod(q, t, r)
        * falling_qprod(q, n - t, s - r);
    let den = falling_qprod(q, n, s);
    Ok(BigRat::new(num, den))
}

/// Γ_n(n, r) = (−1)^r q^{C(r,2)} / Π_{i<r}(q^n − q^i).
pub fn gamma_full(n: i64, r: i64, q: u64) -> Result<BigRat> {
    require(n >= 1, "n >= 1")?;
    require((0..=n).contains(&r), "0 <= r <= n")?;
    let v = BigRat::new(qpow(q, choose2(r) as u64), falling_qprod(q, n, r));
    Ok(if r % 2 == 1 { -v } else { v })
}

/// Γ_n(s, t) = Σ_r P_n(s,t,r) Γ_n(n,r).
pub fn gamma(n: i64, s: i64, t: i64, q: u64) -> Result<BigRat> {
    require((0..=n).contains(&s) && (0..=n).contains(&t), "0 <= s, t <= n")?;
    let mut acc = BigRat::zero();
    for r in 0..=n {
        let p = p_n(n, s, t, r, q)?;
        if !p.is_zero() {
            acc += p * gamma_full(n, r, q)?;
        }
    }
    Ok(acc)
}

/// Full table Γ_n(s,t), s,t = 0..n.
pub fn gamma_table(n: i64, q: u64) -> Result<Vec<Vec<BigRat>>> {
    (0..=n).map(|s| (0..=n).map(|t| gamma(n, s, t, q)).collect()).collect()
}

fn check_nklm(n: i64, k: i64, l: i64, m: i64) -> Result<()> {
    if !(l >= 0 && m >= 0 && k >= 0 && l + m <= k && k < n) {
        return Err(Error::Precondition(format!(
            "l + m <= k < n with all >= 0 fails at (n,k,l,m) = ({n},{k},{l},{m})"
        )));
    }
    Ok(())
}

/// Roots of ζ as exponents i (root q^{−i}).
fn zeta_root_exponents(n: i64, k: i64, l: i64, m: i64) -> Vec<i64> {
    (0..l).chain(k - m..k).chain(k + 1..n).collect()
}

/// ζ(t) = Π_i (t − q^{−i}) / (q^{−n} − q^{−i}) over the root set.
pub fn zeta_eval(n: i64, k: i64, l: i64, m: i64, q: u64, point: &BigRat) -> Result<BigRat> {
    check_nklm(n, k, l, m)?;
    let qn = qpow_rat(q, -n);
    let mut acc = BigRat::one();
    for i in zeta_root_exponents(n, k, l, m) {
        let root = qpow_rat(q, -i);
        acc *= (point - &root) / (&qn - &root);
    }
    Ok(acc)
}

/// Degree of ζ.
pub fn zeta_degree(n: i64, k: i64, l: i64, m: i64) -> Result<i64> {
    check_nklm(n, k, l, m)?;
    Ok(zeta_root_exponents(n, k, l, m).len() as i64)
}

/// Parameters of a univariate witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// φ on {0..n} with parameters (n, k, ℓ, m).
    Phi { n: i64, k: i64, l: i64, m: i64 },
    /// ψ on {0..Δ} with parameters (Δ, R, d₁, d₂).
    Psi { delta: i64, big_r: i64, d1: i64, d2: i64 },
}

/// Exact univariate dual object indexed 0..=top.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessVector {
    pub kind: WitnessKind,
    pub q: u64,
    pub values: Vec<BigRat>,
}

impl WitnessVector {
    /// Arbitrary vector (used for custom φ on the command line).
    pub fn custom(q: u64, values: Vec<BigRat>, kind: WitnessKind) -> WitnessVector {
        WitnessVector { kind, q, values }
    }
    pub fn top(&self) -> usize {
        self.values.len() - 1
    }
    pub fn get(&self, r: i64) -> BigRat {
        if r < 0 || r as usize >= self.values.len() {
            BigRat::zero()
        } else {
            self.values[r as usize].clone()
        }
    }
    pub fn l1(&self) -> BigRat {
        l1(&self.values)
    }
    /// Σ |value| over indices outside `keep`.
    pub fn tail(&self, keep: &[i64]) -> BigRat {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| !keep.contains(&(*i as i64)))
            .fold(BigRat::zero(), |acc, (_, v)| acc + v.abs())
    }
}

/// φ(r) = (n r)_q (−1)^{r−n} q^{C(r,2)−C(n,2)} ζ(q^{−r}).
pub fn phi_build(n: i64, k: i64, l: i64, m: i64, q: u64) -> Result<WitnessVector> {
    check_nklm(n, k, l, m)?;
    let mut values = Vec::with_capacity(n as usize + 1);
    for r in 0..=n {
        let z = zeta_eval(n, k, l, m, q, &qpow_rat(q, -r))?;
        let mut v = rat_int(gauss_binomial(n, r, q)) * qpow_rat(q, choose2(r) - choose2(n)) * z;
        if (n - r) % 2 == 1 {
            v = -v;
        }
        values.push(v);
    }
    Ok(WitnessVector { kind: WitnessKind::Phi { n, k, l, m }, q, values })
}

/// Outcome of checking the five defining properties of φ.
#[derive(Debug, Clone)]
pub struct PhiProperties {
    pub top_is_one: bool,
    pub at_k_negative: bool,
    pub support_ok: bool,
    /// Σ_r φ(r) q^{−jr} for j = 0..=k−ℓ−m.
    pub orthogonality_residuals: Vec<BigRat>,
    pub tail: BigRat,
    pub tail_bound: BigRat,
}

impl PhiProperties {
    pub fn all_hold(&self) -> bool {
        self.top_is_one
            && self.at_k_negative
            && self.support_ok
            && self.orthogonality_residuals.iter().all(|r| r.is_zero())
            && self.tail <= self.tail_bound
    }
}

pub fn phi_properties(phi: &WitnessVector) -> Result<PhiProperties> {
    let WitnessKind::Phi { n, k, l, m } = phi.kind else {
        return Err(Error::Precondition("phi_properties needs a φ witness".into()));
    };
    let q = phi.q;
    let support_ok = (0..=n).all(|r| {
        let allowed = (l..k - m).contains(&r) || r == k || r == n;
        allowed || phi.get(r).is_zero()
    });
    let orthogonality_residuals = (0..=k - l - m)
        .map(|j| (0..=n).fold(BigRat::zero(), |acc, r| acc + phi.get(r) * qpow_rat(q, -j * r)))
        .collect();
    Ok(PhiProperties {
        top_is_one: phi.get(n).is_one(),
        at_k_negative: phi.get(k).is_negative(),
        support_ok,
        orthogonality_residuals,
        tail: phi.tail(&[k, n]),
        tail_bound: rat_int(BigInt::from(32)) * qpow_rat(q, -m - 1),
    })
}

/// Per-rank entry value φ(r)·q^{−n²}/|M_r| of E_φ.
pub fn e_phi_class_values(n: i64, q: u64, phi: &[BigRat]) -> Vec<BigRat> {
    (0..=n)
        .map(|r| {
            let v = phi.get(r as usize).cloned().unwrap_or_else(BigRat::zero);
            if v.is_zero() {
                return v;
            }
            v / rat_int(qpow(q, (n * n) as u64) * count_rank_matrices(n, n, r, q))
        })
        .collect()
}

/// Dense E_φ with rows and columns indexed by all n×n matrices.
pub fn e_phi_matrix(n: usize, field: &Field, phi: &[BigRat]) -> Result<DualMatrix> {
    let size = matrix_space_size(field, n, n, E_PHI_DENSE_CAP)? as usize;
    let ranks = rank_table(field, n, n, E_PHI_DENSE_CAP)?;
    let mut labels = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            let s = add_indices(field, n * n, a as u64, b as u64) as usize;
            labels[a * size + b] = ranks[s] as u32;
        }
    }
    Ok(DualMatrix {
        rows: size,
        cols: size,
        labels,
        class_values: e_phi_class_values(n as i64, field.q() as u64, phi),
        row_index: String::from("n x n matrices by base-q index"),
        col_index: String::from("n x n matrices by base-q index"),
    })
}

/// Σ_t φ(t) Γ_n(s,t) for each s.
pub fn e_phi_gamma_sums(n: i64, q: u64, phi: &[BigRat]) -> Result<Vec<BigRat>> {
    let table = gamma_table(n, q)?;
    Ok((0..=n as usize)
        .map(|s| {
            (0..=n as usize).fold(BigRat::zero(), |acc, t| {
                acc + phi.get(t).cloned().unwrap_or_else(BigRat::zero) * &table[s][t]
            })
        })
        .collect())
}

/// Closed-form singular values q^{−n²}|Σ_t φ(t)Γ_n(s,t)| with multiplicity |M_s|.
pub fn e_phi_spectrum(n: i64, q: u64, phi: &[BigRat]) -> Result<SpectrumReport> {
    let sums = e_phi_gamma_sums(n, q, phi)?;
    let scale = qpow_rat(q, -n * n);
    let items = sums
        .iter()
        .enumerate()
        .map(|(s, v)| (ExactValue::Rational(v.abs() * &scale), count_rank_matrices(n, n, s as i64, q)))
        .collect();
    Ok(SpectrumReport::closed_form(items))
}

/// Singular values of the dense E_φ.
pub fn e_phi_spectrum_numeric(n: usize, field: &Field, phi: &[BigRat], tol: f64) -> Result<SpectrumReport> {
    let m = e_phi_matrix(n, field, phi)?;
    Ok(SpectrumReport::numeric(singular_values(&m.to_dense()), tol))
}

/// Exact spectral norm of E_φ.
pub fn e_phi_spectral_norm(n: i64, q: u64, phi: &[BigRat]) -> Result<BigRat> {
    let sums = e_phi_gamma_sums(n, q, phi)?;
    let max = sums.iter().map(|v| v.abs()).max().unwrap_or_else(BigRat::zero);
    Ok(max * qpow_rat(q, -n * n))
}

/// Witness-certified lower bound on the approximate trace norm of the rank
/// problem, with the two published closed forms for comparison.
#[derive(Debug, Clone)]
pub struct RankTraceBound {
    pub n: i64,
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub q: u64,
    pub delta: BigRat,
    pub phi: WitnessVector,
    pub phi_l1: BigRat,
    /// φ(n) − φ(k).
    pub correlation: BigRat,
    /// Σ_{r∉{k,n}} |φ(r)|.
    pub tail: BigRat,
    pub spectral_norm: BigRat,
    /// (correlation − δ‖φ‖₁ − tail) / ‖E_φ‖.
    pub exact: BigRat,
    /// The bound at ℓ = k, m = 0, the witness behind the second closed form.
    pub exact_alt: BigRat,
    pub published_main: f64,
    pub published_alt: f64,
}

impl RankTraceBound {
    /// Certified bound max(0, witness).
    pub fn certified(&self) -> BigRat {
        self.exact.clone().max(BigRat::zero())
    }
    pub fn certified_alt(&self) -> BigRat {
        self.exact_alt.clone().max(BigRat::zero())
    }
    pub fn dominates_published(&self) -> bool {
        rat_to_f64(&self.certified()) >= self.published_main * (1.0 - 1e-12)
            && rat_to_f64(&self.certified_alt()) >= self.published_alt * (1.0 - 1e-12)
    }
}

/// Witness value (correlation − δ‖w‖₁ − tail)/‖Φ‖ for given ingredients.
pub fn witness_value(correlation: &BigRat, delta: &BigRat, l1: &BigRat, tail: &BigRat, norm: &BigRat) -> BigRat {
    (correlation - delta * l1 - tail) / norm
}

/// Same in floating point for irrational δ.
pub fn witness_value_f64(correlation: &BigRat, delta: f64, l1: &BigRat, tail: &BigRat, norm: f64) -> f64 {
    (rat_to_f64(correlation) - delta * rat_to_f64(l1) - rat_to_f64(tail)) / norm
}

fn rank_witness_parts(n: i64, k: i64, l: i64, m: i64, q: u64) -> Result<(WitnessVector, BigRat, BigRat, BigRat, BigRat)> {
    let phi = phi_build(n, k, l, m, q)?;
    let norm = e_phi_spectral_norm(n, q, &phi.values)?;
    let corr = phi.get(n) - phi.get(k);
    let tail = phi.tail(&[k, n]);
    let l1v = phi.l1();
    Ok((phi, corr, tail, l1v, norm))
}

/// (1/150)(1 − δ − 64/q^{m+1}) q^{ℓ(k−ℓ−m+1)/2} q^{n²}.
pub fn published_rank_main(n: i64, k: i64, l: i64, m: i64, q: u64, delta: f64) -> f64 {
    let qf = q as f64;
    (1.0 / 150.0)
        * (1.0 - delta - 64.0 / libm::pow(qf, (m + 1) as f64))
        * libm::pow(qf, (l * (k - l - m + 1)) as f64 / 2.0)
        * libm::pow(qf, (n * n) as f64)
}

/// (1 − δ)/150 · q^{k/2} q^{n²}.
pub fn published_rank_alt(n: i64, k: i64, q: u64, delta: f64) -> f64 {
    let qf = q as f64;
    (1.0 - delta) / 150.0 * libm::pow(qf, k as f64 / 2.0) * libm::pow(qf, (n * n) as f64)
}

pub fn rank_trace_norm_lb(n: i64, k: i64, q: u64, delta: &BigRat, l: i64, m: i64) -> Result<RankTraceBound> {
    require(n > k && k >= 0, "n > k >= 0")?;
    require(!delta.is_negative(), "delta >= 0")?;
    check_nklm(n, k, l, m)?;
    let (phi, corr, tail, l1v, norm) = rank_witness_parts(n, k, l, m, q)?;
    let exact = witness_value(&corr, delta, &l1v, &tail, &norm);
    let (_, c2, t2, l2, n2) = rank_witness_parts(n, k, k, 0, q)?;
    let exact_alt = witness_value(&c2, delta, &l2, &t2, &n2);
    let d = rat_to_f64(delta);
    Ok(RankTraceBound {
        n,
        k,
        l,
        m,
        q,
        delta: delta.clone(),
        phi,
        phi_l1: l1v,
        correlation: corr,
        tail,
        spectral_norm: norm,
        exact,
        exact_alt,
        published_main: published_rank_main(n, k, l, m, q, d),
        published_alt: published_rank_alt(n, k, q, d),
    })
}

/// ½ log₂(trace / (3√(|X||Y|))), not clamped. `trace` must be positive.
pub fn qcc_bits_unclamped_log2(log2_trace: f64, x_size: &BigInt, y_size: &BigInt) -> f64 {
    0.5 * (log2_trace - libm::log2(3.0) - 0.5 * (log2_bigint(x_size) + log2_bigint(y_size)))
}

/// Approximate trace norm method: ½ log₂(trace_lb / (3√(|X||Y|))) clamped at 0.
pub fn qcc_lower_bound(trace_lb: &BigRat, x_size: &BigInt, y_size: &BigInt) -> f64 {
    if !trace_lb.is_positive() {
        return 0.0;
    }
    qcc_bits_unclamped_log2(log2_rat(trace_lb), x_size, y_size).max(0.0)
}

pub fn qcc_lower_bound_f64(trace_lb: f64, x_size: &BigInt, y_size: &BigInt) -> f64 {
    if trace_lb <= 0.0 {
        return 0.0;
    }
    qcc_bits_unclamped_log2(libm::log2(trace_lb), x_size, y_size).max(0.0)
}

/// Generic dual witness bound for a partial sign matrix `f` (entries ±1 or
/// `None` outside the domain) and a real matrix Φ of the same shape.
pub fn approx_trace_witness(f: &[Option<i8>], phi: &Dense, eps: f64) -> Result<f64> {
    if f.len() != phi.data.len() {
        return Err(Error::Shape("sign matrix and witness differ in size".into()));
    }
    let mut corr = 0.0;
    let mut l1v = 0.0;
    let mut outside = 0.0;
    for (s, &v) in f.iter().zip(&phi.data) {
        l1v += libm::fabs(v);
        match s {
            Some(x) => corr += *x as f64 * v,
            None => outside += libm::fabs(v),
        }
    }
    let norm = crate::numeric::spectral_norm(phi);
    if norm == 0.0 {
        return Err(Error::Precondition("witness must be nonzero".into()));
    }
    Ok((corr - eps * l1v - outside) / norm)
}

/// Which branch of the canonical bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalCase {
    /// k = 0: only the trivial one-bit bound.
    Trivial,
    /// k ≤ 50: (1/600)k² log₂ q − 5.
    Small,
    /// k > 50: (1/96)k² log₂ q − 6.
    Large,
}

/// Closed-form lower bound for distinguishing rank k from full rank.
#[derive(Debug, Clone)]
pub struct CanonicalBound {
    pub k: i64,
    pub q: u64,
    /// ε = ½ − ¼ q^{−k/3}.
    pub eps: f64,
    pub case: CanonicalCase,
    /// The case formula before combining with the trivial bound.
    pub case_bits: f64,
    /// max(1, case_bits).
    pub bits: f64,
    /// Witness parameters (ℓ, m) used by the case.
    pub l: i64,
    pub m: i64,
}

pub fn canonical_rank_bound(k: i64, q: u64) -> Result<CanonicalBound> {
    require(k >= 0, "k >= 0")?;
    require(q >= 2, "q >= 2")?;
    let qf = q as f64;
    let eps = 0.5 - 0.25 * libm::pow(qf, -(k as f64) / 3.0);
    let lq = libm::log2(qf);
    let kf = k as f64;
    let (case, case_bits, l, m) = if k == 0 {
        (CanonicalCase::Trivial, 1.0, 0, 0)
    } else if k <= 50 {
        (CanonicalCase::Small, kf * kf * lq / 600.0 - 5.0, k, 0)
    } else {
        (CanonicalCase::Large, kf * kf * lq / 96.0 - 6.0, (k + 2) / 3, k / 2)
    };
    Ok(CanonicalBound { k, q, eps, case, case_bits, bits: case_bits.max(1.0), l, m })
}

/// Bits certified by the exact E_φ witness at δ = 2ε for the canonical
/// parameters, before clamping: ½ log₂(W / (3 q^{n²})).
pub fn canonical_witness_bits(n: i64, k: i64, q: u64) -> Result<f64> {
    let cb = canonical_rank_bound(k, q)?;
    require(n > k && k >= 1, "n > k >= 1")?;
    let (_, corr, tail, l1v, norm) = rank_witness_parts(n, k, cb.l, cb.m, q)?;
    let w = witness_value_f64(&corr, 2.0 * cb.eps, &l1v, &tail, rat_to_f64(&norm));
    if w <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let side = qpow(q, (n * n) as u64);
    Ok(qcc_bits_unclamped_log2(libm::log2(w), &side, &side))
}

/// Histogram of the phase of ⟨A,B⟩ over a product of matrix sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterAverage {
    pub p: u32,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl CharacterAverage {
    /// Exact value when the nontrivial phases are equidistributed, using
    /// ω + ω² + ⋯ + ω^{p−1} = −1.
    pub fn exact(&self) -> Option<BigRat> {
        let c1 = *self.counts.get(1)?;
        if self.counts[1..].iter().any(|&c| c != c1) {
            return None;
        }
        Some(BigRat::new(BigInt::from(self.counts[0] as i128 - c1 as i128), BigInt::from(self.total)))
    }

    /// (re, im) of the average of ω^{phase}.
    pub fn complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, &c) in self.counts.iter().enumerate() {
            let a = 2.0 * core::f64::consts::PI * j as f64 / self.p as f64;
            re += c as f64 * libm::cos(a);
            im += c as f64 * libm::sin(a);
        }
        (re / self.total as f64, im / self.total as f64)
    }
}

/// Γ_n(s,t) by enumerating every rank-s × rank-t pair (q^{n²} ≤ cap).
pub fn gamma_brute_force(n: usize, s: usize, t: usize, field: &Field, cap: u128) -> Result<CharacterAverage> {
    let a_set = enumerate_rank(field, n, n, s, cap)?;
    let b_set = if s == t { a_set.clone() } else { enumerate_rank(field, n, n, t, cap)? };
    let p = field.p();
    let mut counts = vec![0u64; p as usize];
    for a in &a_set {
        for b in &b_set {
            let ip = a.data().iter().zip(b.data()).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
            counts[field.phase(ip) as usize] += 1;
        }
    }
    Ok(CharacterAverage { p, counts, total: (a_set.len() * b_set.len()) as u64 })
}
