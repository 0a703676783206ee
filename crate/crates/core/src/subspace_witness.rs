//! Subspace matrices J indexed by pairs of subspaces, their spectra through
//! the Λ numbers, the ψ witness, and the intersection-problem bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dual::DualMatrix;
use crate::error::{check_cap, require, Error, Result};
use crate::gf::Field;
use crate::numeric::{rat_nullspace, rat_rank, singular_values, sym_eigenvalues};
use crate::qcomb::{choose2, gauss_binomial, l1, log2_bigint, qpow, qpow_rat, rat_int, rat_to_f64, BigRat};
use crate::rank_witness::{phi_build, qcc_bits_unclamped_log2, WitnessKind, WitnessVector};
use crate::spectrum::{ExactValue, SpectrumReport};
use crate::subspaces::{enumerate, padding_reduce, IntersectParams, Subspace, DEFAULT_SUBSPACE_CAP};

/// Dense J builds need (n choose m)_q · (n choose ℓ)_q ≤ this many entries.
pub const DENSE_J_CAP: u128 = 4_000_000;

/// Default constant in the canonical intersection bound.
pub const DEFAULT_INTERSECT_C: f64 = 1.0 / 960.0;

fn check_dims(n: i64, m: i64, l: i64) -> Result<()> {
    if !(m >= 0 && l >= 0 && m.max(l) <= n) {
        return Err(Error::Precondition(format!("max{{m,l}} <= n fails at (n,m,l) = ({n},{m},{l})")));
    }
    Ok(())
}

fn check_normalizable(n: i64, m: i64, l: i64) -> Result<()> {
    if m + l > n {
        return Err(Error::Precondition(format!("m + l <= n fails: {m} + {l} > {n}")));
    }
    Ok(())
}

/// Λ_r^{n,m,ℓ}(k) = Σ_i (−1)^i (k i)_q q^{C(i,2)+(m−r)(ℓ−r−i)} (n−m−i, ℓ−r−i)_q (m−k+i, r−k+i)_q.
pub fn lambda(n: i64, m: i64, l: i64, r: i64, k: i64, q: u64) -> Result<BigInt> {
    check_dims(n, m, l)?;
    require(k >= 0 && k <= m.min(l), "0 <= k <= min{m,l}")?;
    require(r >= 0, "r >= 0")?;
    let mut acc = BigInt::zero();
    for i in 0..=k {
        let b1 = gauss_binomial(n - m - i, l - r - i, q);
        if b1.is_zero() {
            continue;
        }
        let b2 = gauss_binomial(m - k + i, r - k + i, q);
        if b2.is_zero() {
            continue;
        }
        let e = choose2(i) + (m - r) * (l - r - i);
        let term = gauss_binomial(k, i, q) * qpow(q, e as u64) * b1 * b2;
        if i % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// ‖J_r^{n,m,ℓ}‖₁ = Λ_r(0) · (n choose m)_q.
pub fn j_r_l1(n: i64, m: i64, l: i64, r: i64, q: u64) -> Result<BigInt> {
    Ok(lambda(n, m, l, r, 0, q)? * gauss_binomial(n, m, q))
}

/// Λ̄_r(k) = Λ_r(k)/‖J_r‖₁ (zero when J_r vanishes). Needs m + ℓ ≤ n.
pub fn lambda_bar(n: i64, m: i64, l: i64, r: i64, k: i64, q: u64) -> Result<BigRat> {
    check_normalizable(n, m, l)?;
    let den = j_r_l1(n, m, l, r, q)?;
    if den.is_zero() {
        return Ok(BigRat::zero());
    }
    Ok(BigRat::new(lambda(n, m, l, r, k, q)?, den))
}

fn coef(phi: &[BigRat], r: i64) -> BigRat {
    phi.get(r as usize).cloned().unwrap_or_else(BigRat::zero)
}

/// Λ_φ(k) = Σ_r φ(r) Λ_r(k).
pub fn lambda_phi(n: i64, m: i64, l: i64, k: i64, q: u64, phi: &[BigRat]) -> Result<BigRat> {
    let mut acc = BigRat::zero();
    for r in 0..=m.min(l) {
        let c = coef(phi, r);
        if !c.is_zero() {
            acc += c * rat_int(lambda(n, m, l, r, k, q)?);
        }
    }
    Ok(acc)
}

/// Λ̄_φ(k) = Σ_r φ(r) Λ̄_r(k).
pub fn lambda_bar_phi(n: i64, m: i64, l: i64, k: i64, q: u64, phi: &[BigRat]) -> Result<BigRat> {
    let mut acc = BigRat::zero();
    for r in 0..=m.min(l) {
        let c = coef(phi, r);
        if !c.is_zero() {
            acc += c * lambda_bar(n, m, l, r, k, q)?;
        }
    }
    Ok(acc)
}

/// Λ_r(k) and (when m + ℓ ≤ n) Λ̄_r(k) for r, k in 0..=min{m,ℓ}.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub q: u64,
    /// lambda[r][k].
    pub lambda: Vec<Vec<BigInt>>,
    pub lambda_bar: Option<Vec<Vec<BigRat>>>,
}

impl LambdaTable {
    pub fn new(n: i64, m: i64, l: i64, q: u64) -> Result<LambdaTable> {
        check_dims(n, m, l)?;
        let top = m.min(l);
        let lambda = (0..=top)
            .map(|r| (0..=top).map(|k| lambda(n, m, l, r, k, q)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let lambda_bar = if m + l <= n {
            Some(
                (0..=top)
                    .map(|r| (0..=top).map(|k| lambda_bar(n, m, l, r, k, q)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok(LambdaTable { n, m, l, q, lambda, lambda_bar })
    }

    /// Λ_r(0) · (n choose m)_q summed over r; equals (n choose m)_q (n choose ℓ)_q.
    pub fn row_sum_total(&self) -> BigInt {
        self.lambda.iter().fold(BigInt::zero(), |acc, row| acc + &row[0])
    }

    /// Λ_r(0) against q^{(m−r)(ℓ−r)} (n−m choose ℓ−r)_q (m choose r)_q.
    pub fn normalization_holds(&self) -> bool {
        let (n, m, l, q) = (self.n, self.m, self.l, self.q);
        self.lambda.iter().enumerate().all(|(r, row)| {
            let r = r as i64;
            row[0] == qpow(q, ((m - r) * (l - r)) as u64) * gauss_binomial(n - m, l - r, q) * gauss_binomial(m, r, q)
        })
    }
}

/// (n choose k)_q − (n choose k−1)_q.
pub fn level_multiplicity(n: i64, k: i64, q: u64) -> BigInt {
    gauss_binomial(n, k, q) - gauss_binomial(n, k - 1, q)
}

/// J_φ^{n,m,ℓ} or its normalized version J̄_φ.
#[derive(Debug, Clone)]
pub struct SubspaceMatrix {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub q: u64,
    pub phi: Vec<BigRat>,
    pub normalized: bool,
}

pub fn j_matrix(n: i64, m: i64, l: i64, q: u64, phi: &[BigRat], normalized: bool) -> Result<SubspaceMatrix> {
    check_dims(n, m, l)?;
    if normalized {
        check_normalizable(n, m, l)?;
    }
    let top = m.min(l);
    Ok(SubspaceMatrix { n, m, l, q, phi: (0..=top).map(|r| coef(phi, r)).collect(), normalized })
}

/// φ as the indicator of {r}.
pub fn indicator(top: i64, r: i64) -> Vec<BigRat> {
    (0..=top).map(|i| if i == r { BigRat::from_integer(1.into()) } else { BigRat::zero() }).collect()
}

/// dim(S ∩ T) over the enumerated bases, row-major.
pub fn intersection_dims(field: &Field, n: usize, m: usize, l: usize) -> Result<(usize, usize, Vec<u32>)> {
    let q = field.q() as u64;
    let size = gauss_binomial(n as i64, m as i64, q) * gauss_binomial(n as i64, l as i64, q);
    check_cap("dense subspace matrix entries", u128::try_from(size).unwrap_or(u128::MAX), DENSE_J_CAP)?;
    let rows = enumerate(field, n, m, DEFAULT_SUBSPACE_CAP)?;
    let cols = enumerate(field, n, l, DEFAULT_SUBSPACE_CAP)?;
    let mut labels = Vec::with_capacity(rows.len() * cols.len());
    for s in &rows {
        for t in &cols {
            labels.push(s.intersection_dim(t)? as u32);
        }
    }
    Ok((rows.len(), cols.len(), labels))
}

impl SubspaceMatrix {
    /// Entry value on pairs with dim(S ∩ T) = r.
    pub fn class_values(&self) -> Result<Vec<BigRat>> {
        (0..=self.m.min(self.l))
            .map(|r| {
                let v = coef(&self.phi, r);
                if !self.normalized || v.is_zero() {
                    return Ok(v);
                }
                let den = j_r_l1(self.n, self.m, self.l, r, self.q)?;
                Ok(if den.is_zero() { BigRat::zero() } else { v / rat_int(den) })
            })
            .collect()
    }

    /// Exact entrywise ℓ₁ norm.
    pub fn l1(&self) -> Result<BigRat> {
        let vals = self.class_values()?;
        let mut acc = BigRat::zero();
        for (r, v) in vals.iter().enumerate() {
            acc += v.abs() * rat_int(j_r_l1(self.n, self.m, self.l, r as i64, self.q)?);
        }
        Ok(acc)
    }

    pub fn shape(&self) -> (BigInt, BigInt) {
        (gauss_binomial(self.n, self.m, self.q), gauss_binomial(self.n, self.l, self.q))
    }

    pub fn dense(&self, field: &Field) -> Result<DualMatrix> {
        if field.q() as u64 != self.q {
            return Err(Error::FieldMismatch);
        }
        let (rows, cols, labels) = intersection_dims(field, self.n as usize, self.m as usize, self.l as usize)?;
        Ok(DualMatrix {
            rows,
            cols,
            labels,
            class_values: self.class_values()?,
            row_index: format!("{}-dim subspaces of F^{}", self.m, self.n),
            col_index: format!("{}-dim subspaces of F^{}", self.l, self.n),
        })
    }
}

/// Closed-form eigenvalues of the symmetric J_φ^{n,m,m}.
pub fn j_eigen(n: i64, m: i64, q: u64, phi: &[BigRat]) -> Result<SpectrumReport> {
    check_dims(n, m, m)?;
    let (mm, psi): (i64, Vec<BigRat>) = if 2 * m <= n {
        (m, (0..=m).map(|t| coef(phi, t)).collect())
    } else {
        let shift = 2 * m - n;
        (n - m, (0..=n - m).map(|t| coef(phi, t + shift)).collect())
    };
    let mut items = Vec::new();
    for k in 0..=mm {
        items.push((ExactValue::Rational(lambda_phi(n, mm, mm, k, q, &psi)?), level_multiplicity(n, k, q)));
    }
    Ok(SpectrumReport::closed_form(items))
}

/// Closed-form singular values of J_φ^{n,m,ℓ} or J̄_φ^{n,m,ℓ}.
pub fn j_singular(n: i64, m: i64, l: i64, q: u64, phi: &[BigRat], normalized: bool) -> Result<SpectrumReport> {
    check_dims(n, m, l)?;
    if normalized {
        check_normalizable(n, m, l)?;
    }
    let (mm, ll, psi): (i64, i64, Vec<BigRat>) = if m + l <= n {
        (m, l, (0..=m.min(l)).map(|t| coef(phi, t)).collect())
    } else {
        let shift = m + l - n;
        (n - m, n - l, (0..=(n - m).min(n - l)).map(|t| coef(phi, t + shift)).collect())
    };
    let mut items = Vec::new();
    for k in 0..=mm.min(ll) {
        let (a, b) = if normalized {
            (lambda_bar_phi(n, mm, ll, k, q, &psi)?, lambda_bar_phi(n, ll, mm, k, q, &psi)?)
        } else {
            (lambda_phi(n, mm, ll, k, q, &psi)?, lambda_phi(n, ll, mm, k, q, &psi)?)
        };
        items.push((ExactValue::Sqrt((a * b).abs()), level_multiplicity(n, k, q)));
    }
    Ok(SpectrumReport::closed_form(items))
}

/// Numeric eigenvalues of the dense J_φ^{n,m,m}.
pub fn j_eigen_numeric(field: &Field, n: i64, m: i64, phi: &[BigRat], tol: f64) -> Result<SpectrumReport> {
    let j = j_matrix(n, m, m, field.q() as u64, phi, false)?.dense(field)?;
    Ok(SpectrumReport::numeric(sym_eigenvalues(&j.to_dense()), tol))
}

/// Numeric singular values of the dense J_φ^{n,m,ℓ} (or J̄_φ).
pub fn j_singular_numeric(
    field: &Field,
    n: i64,
    m: i64,
    l: i64,
    phi: &[BigRat],
    normalized: bool,
    tol: f64,
) -> Result<SpectrumReport> {
    let j = j_matrix(n, m, l, field.q() as u64, phi, normalized)?.dense(field)?;
    Ok(SpectrumReport::numeric(singular_values(&j.to_dense()), tol))
}

/// ψ(r) = −φ_{(Δ, Δ−R, d₂, d₁)}(Δ − r).
pub fn psi_build(delta: i64, big_r: i64, d1: i64, d2: i64, q: u64) -> Result<WitnessVector> {
    if !(d1 >= 0 && d2 >= 0 && 0 < big_r && big_r <= delta - d1 - d2) {
        return Err(Error::Precondition(format!(
            "0 < R <= Delta - d1 - d2 fails at (Delta,R,d1,d2) = ({delta},{big_r},{d1},{d2})"
        )));
    }
    let phi = phi_build(delta, delta - big_r, d2, d1, q)?;
    let values = (0..=delta).map(|r| -phi.get(delta - r)).collect();
    Ok(WitnessVector { kind: WitnessKind::Psi { delta, big_r, d1, d2 }, q, values })
}

#[derive(Debug, Clone)]
pub struct PsiProperties {
    pub at_zero_is_minus_one: bool,
    pub at_r_positive: bool,
    pub support_ok: bool,
    /// Σ_r ψ(r) q^{jr} for j = 0..=Δ−R−d₁−d₂.
    pub orthogonality_residuals: Vec<BigRat>,
    pub tail: BigRat,
    pub tail_bound: BigRat,
}

impl PsiProperties {
    pub fn all_hold(&self) -> bool {
        self.at_zero_is_minus_one
            && self.at_r_positive
            && self.support_ok
            && self.orthogonality_residuals.iter().all(|r| r.is_zero())
            && self.tail <= self.tail_bound
    }
}

pub fn psi_properties(psi: &WitnessVector) -> Result<PsiProperties> {
    let WitnessKind::Psi { delta, big_r, d1, d2 } = psi.kind else {
        return Err(Error::Precondition("psi_properties needs a ψ witness".into()));
    };
    let q = psi.q;
    let support_ok = (0..=delta).all(|r| {
        let allowed = (big_r + d1 + 1..=delta - d2).contains(&r) || r == 0 || r == big_r;
        allowed || psi.get(r).is_zero()
    });
    let orthogonality_residuals = (0..=delta - big_r - d1 - d2)
        .map(|j| (0..=delta).fold(BigRat::zero(), |acc, r| acc + psi.get(r) * qpow_rat(q, j * r)))
        .collect();
    Ok(PsiProperties {
        at_zero_is_minus_one: psi.get(0) == BigRat::from_integer((-1).into()),
        at_r_positive: psi.get(big_r).is_positive(),
        support_ok,
        orthogonality_residuals,
        tail: psi.tail(&[0, big_r]),
        tail_bound: rat_int(BigInt::from(32)) * qpow_rat(q, -d1 - 1),
    })
}

/// Witness-certified lower bound on the approximate trace norm of the
/// canonical intersection problem, with both published closed forms.
#[derive(Debug, Clone)]
pub struct IntersectTraceBound {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub big_r: i64,
    pub q: u64,
    pub delta: f64,
    pub d1: i64,
    pub d2: i64,
    pub psi: WitnessVector,
    pub psi_l1: BigRat,
    /// −ψ(0) + ψ(R).
    pub correlation: BigRat,
    /// Σ_{r∉{0,R}} |ψ(r)|.
    pub off_support: BigRat,
    /// ‖J̄_ψ‖², exact.
    pub spectral_sq: BigRat,
    pub spectral: f64,
    pub exact: f64,
    /// The bound at d₁ = 0, d₂ = min{m,ℓ} − R.
    pub exact_alt: f64,
    pub published_main: f64,
    pub published_alt: f64,
}

impl IntersectTraceBound {
    pub fn certified(&self) -> f64 {
        self.exact.max(0.0)
    }
    pub fn certified_alt(&self) -> f64 {
        self.exact_alt.max(0.0)
    }
    pub fn dominates_published(&self) -> bool {
        self.certified() >= self.published_main * (1.0 - 1e-12)
            && self.certified_alt() >= self.published_alt * (1.0 - 1e-12)
    }
}

/// max_k |Λ̄_ψ^{n,m,ℓ}(k) Λ̄_ψ^{n,ℓ,m}(k)|.
pub fn j_bar_spectral_sq(n: i64, m: i64, l: i64, q: u64, psi: &[BigRat]) -> Result<BigRat> {
    check_normalizable(n, m, l)?;
    let mut best = BigRat::zero();
    for k in 0..=m.min(l) {
        let v = (lambda_bar_phi(n, m, l, k, q, psi)? * lambda_bar_phi(n, l, m, k, q, psi)?).abs();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

struct IntersectParts {
    psi: WitnessVector,
    l1v: BigRat,
    corr: BigRat,
    off: BigRat,
    sq: BigRat,
}

fn intersect_parts(n: i64, m: i64, l: i64, big_r: i64, q: u64, d1: i64, d2: i64) -> Result<IntersectParts> {
    let psi = psi_build(m.min(l), big_r, d1, d2, q)?;
    let sq = j_bar_spectral_sq(n, m, l, q, &psi.values)?;
    Ok(IntersectParts {
        l1v: l1(&psi.values),
        corr: psi.get(big_r) - psi.get(0),
        off: psi.tail(&[0, big_r]),
        sq,
        psi,
    })
}

fn parts_value(p: &IntersectParts, delta: f64) -> f64 {
    (rat_to_f64(&p.corr) - delta * rat_to_f64(&p.l1v) - rat_to_f64(&p.off)) / libm::sqrt(rat_to_f64(&p.sq))
}

fn sqrt_sizes(n: i64, m: i64, l: i64, q: u64) -> f64 {
    libm::exp2(0.5 * (log2_bigint(&gauss_binomial(n, m, q)) + log2_bigint(&gauss_binomial(n, l, q))))
}

/// (1/8)(1 − δ − 64/q^{d₁+1}) √((n m)(n ℓ)) q^{(Δ−R−d₁−d₂+1)(m+ℓ−2Δ+2d₂)/4}.
pub fn published_intersect_main(n: i64, m: i64, l: i64, big_r: i64, q: u64, delta: f64, d1: i64, d2: i64) -> f64 {
    let qf = q as f64;
    let dd = m.min(l);
    0.125
        * (1.0 - delta - 64.0 / libm::pow(qf, (d1 + 1) as f64))
        * sqrt_sizes(n, m, l, q)
        * libm::pow(qf, ((dd - big_r - d1 - d2 + 1) * (m + l - 2 * dd + 2 * d2)) as f64 / 4.0)
}

/// (1 − δ)/8 · √((n m)(n ℓ)) q^{(m+ℓ−2R)/4}.
pub fn published_intersect_alt(n: i64, m: i64, l: i64, big_r: i64, q: u64, delta: f64) -> f64 {
    (1.0 - delta) / 8.0 * sqrt_sizes(n, m, l, q) * libm::pow(q as f64, (m + l - 2 * big_r) as f64 / 4.0)
}

#[allow(clippy::too_many_arguments)]
pub fn intersect_trace_norm_lb(
    n: i64,
    m: i64,
    l: i64,
    big_r: i64,
    q: u64,
    delta: f64,
    d1: i64,
    d2: i64,
) -> Result<IntersectTraceBound> {
    if !(0 < big_r && big_r <= m.min(l)) {
        return Err(Error::Precondition(format!("0 < R <= min{{m,l}} fails at R = {big_r}, min = {}", m.min(l))));
    }
    check_normalizable(n, m, l)?;
    if !(d1 >= 0 && d2 >= 0 && d1 + d2 <= m.min(l) - big_r) {
        return Err(Error::Precondition(format!("d1 + d2 <= min{{m,l}} - R fails at d1 = {d1}, d2 = {d2}")));
    }
    require(delta >= 0.0, "delta >= 0")?;
    let p = intersect_parts(n, m, l, big_r, q, d1, d2)?;
    let exact = parts_value(&p, delta);
    let alt = intersect_parts(n, m, l, big_r, q, 0, m.min(l) - big_r)?;
    let exact_alt = parts_value(&alt, delta);
    Ok(IntersectTraceBound {
        n,
        m,
        l,
        big_r,
        q,
        delta,
        d1,
        d2,
        spectral: libm::sqrt(rat_to_f64(&p.sq)),
        spectral_sq: p.sq,
        psi: p.psi,
        psi_l1: p.l1v,
        correlation: p.corr,
        off_support: p.off,
        exact,
        exact_alt,
        published_main: published_intersect_main(n, m, l, big_r, q, delta, d1, d2),
        published_alt: published_intersect_alt(n, m, l, big_r, q, delta),
    })
}

/// log_q ⌈q^e γ⌉.
pub fn ceil_log_factor(q: u64, e: i64, gamma: f64) -> f64 {
    let v = libm::pow(q as f64, e as f64) * gamma;
    // Guard against values like 8.000000000001 from rounding.
    let rounded = libm::round(v);
    let c = if libm::fabs(v - rounded) <= 1e-9 * rounded.max(1.0) { rounded } else { libm::ceil(v) };
    libm::log2(c.max(1.0)) / libm::log2(q as f64)
}

/// Communication lower bound for INTERSECT_{r,R} at error (1 − γ)/2.
#[derive(Debug, Clone)]
pub struct IntersectCcBound {
    pub reduced: IntersectParams,
    pub c: f64,
    pub gamma: f64,
    /// log_q⌈q^{m−R}γ⌉ + 1 and log_q⌈q^{ℓ−R}γ⌉ + 1.
    pub factors: (f64, f64),
    /// True when R = m = ℓ and only the one-bit bound applies.
    pub trivial: bool,
    pub formula_bits: f64,
    pub bits: f64,
}

/// Smallest legal γ: ⅓ q^{−(m+ℓ−2R)/5}.
pub fn intersect_gamma_min(m: i64, l: i64, big_r: i64, q: u64) -> f64 {
    libm::pow(q as f64, -((m + l - 2 * big_r) as f64) / 5.0) / 3.0
}

#[allow(clippy::too_many_arguments)]
pub fn intersect_cc_lower_bound(
    n: i64,
    m: i64,
    l: i64,
    r: i64,
    big_r: i64,
    gamma: f64,
    q: u64,
    c: f64,
) -> Result<IntersectCcBound> {
    if !(0.max(m + l - n) <= r && r < big_r && big_r <= m.min(l)) {
        return Err(Error::Precondition(format!(
            "max{{0,m+l-n}} <= r < R <= min{{m,l}} fails at (n,m,l,r,R) = ({n},{m},{l},{r},{big_r})"
        )));
    }
    let gmin = intersect_gamma_min(m, l, big_r, q);
    if !(gamma >= gmin * (1.0 - 1e-12) && gamma <= 1.0) {
        return Err(Error::Precondition(format!("1/3 q^(-(m+l-2R)/5) <= gamma <= 1 fails: {gmin} <= {gamma} <= 1")));
    }
    require(c > 0.0, "c > 0")?;
    let reduced = padding_reduce(IntersectParams {
        n: n as usize,
        m: m as usize,
        l: l as usize,
        r: r as usize,
        big_r: big_r as usize,
    })?;
    let trivial = big_r == m && m == l;
    let factors = (ceil_log_factor(q, m - big_r, gamma) + 1.0, ceil_log_factor(q, l - big_r, gamma) + 1.0);
    let formula_bits = if trivial { 1.0 } else { c * factors.0 * factors.1 * libm::log2(q as f64) };
    Ok(IntersectCcBound { reduced, c, gamma, factors, trivial, formula_bits, bits: formula_bits.max(1.0) })
}

/// Bits certified by the alternate ψ witness at δ = 1 − γ on the reduced
/// canonical problem: ½ log₂(W/(3√((n m)(n ℓ)))), unclamped.
pub fn intersect_witness_bits(p: IntersectParams, q: u64, gamma: f64) -> Result<f64> {
    let (n, m, l, big_r) = (p.n as i64, p.m as i64, p.l as i64, p.big_r as i64);
    let w = intersect_trace_norm_lb(n, m, l, big_r, q, 1.0 - gamma, 0, m.min(l) - big_r)?.exact;
    if w <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(qcc_bits_unclamped_log2(libm::log2(w), &gauss_binomial(n, m, q), &gauss_binomial(n, l, q)))
}

/// Dense 0/1 rows of J_r^{n,m,ℓ} as rationals.
fn j_r_rows(field: &Field, n: usize, m: usize, l: usize, r: u32) -> Result<Vec<Vec<BigRat>>> {
    let (rows, cols, labels) = intersection_dims(field, n, m, l)?;
    Ok((0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| if labels[i * cols + j] == r { BigRat::from_integer(1.into()) } else { BigRat::zero() })
                .collect()
        })
        .collect())
}

fn mat_vec(a: &[Vec<BigRat>], x: &[BigRat]) -> Vec<BigRat> {
    a.iter()
        .map(|row| row.iter().zip(x).filter(|(a, _)| !a.is_zero()).fold(BigRat::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Rank over Q of J_k^{n,m,k}.
pub fn j_rank(field: &Field, n: usize, m: usize, k: usize) -> Result<usize> {
    Ok(rat_rank(&j_r_rows(field, n, m, k, k as u32)?))
}

/// Up to `limit` basis vectors of ker J_{k−1}^{n,k−1,k} (k ≥ 1).
pub fn kernel_samples(field: &Field, n: usize, k: usize, limit: usize) -> Result<Vec<Vec<BigRat>>> {
    require(k >= 1, "k >= 1")?;
    let rows = j_r_rows(field, n, k - 1, k, (k - 1) as u32)?;
    let mut basis = rat_nullspace(&rows);
    basis.truncate(limit);
    Ok(basis)
}

/// Largest |J_r x − (−1)^{k−r} q^{C(k−r,2)} (k r)_q J_k x| over r and sampled x.
pub fn increase_overlap_residual(field: &Field, n: usize, m: usize, k: usize, limit: usize) -> Result<(usize, f64)> {
    let q = field.q() as u64;
    let xs = kernel_samples(field, n, k, limit)?;
    let jk = j_r_rows(field, n, m, k, k as u32)?;
    let mut worst: f64 = 0.0;
    for r in 0..=k.min(m) {
        let jr = j_r_rows(field, n, m, k, r as u32)?;
        let d = (k - r) as i64;
        let mut c = rat_int(qpow(q, choose2(d) as u64) * gauss_binomial(k as i64, r as i64, q));
        if d % 2 == 1 {
            c = -c;
        }
        for x in &xs {
            let lhs = mat_vec(&jr, x);
            let rhs = mat_vec(&jk, x);
            for (a, b) in lhs.iter().zip(&rhs) {
                worst = worst.max(rat_to_f64(&(a - &c * b).abs()));
            }
        }
    }
    Ok((xs.len(), worst))
}

/// Largest |J_t^{n,m,ℓ} J_k^{n,ℓ,k} x − Λ_t(k) J_k^{n,m,k} x| over t and sampled x.
pub fn eigenvector_residual(field: &Field, n: usize, m: usize, l: usize, k: usize, limit: usize) -> Result<(usize, f64)> {
    let q = field.q() as u64;
    let xs = kernel_samples(field, n, k, limit)?;
    let jlk = j_r_rows(field, n, l, k, k as u32)?;
    let jmk = j_r_rows(field, n, m, k, k as u32)?;
    let mut worst: f64 = 0.0;
    for t in 0..=m.min(l) {
        let jt = j_r_rows(field, n, m, l, t as u32)?;
        let lam = rat_int(lambda(n as i64, m as i64, l as i64, t as i64, k as i64, q)?);
        for x in &xs {
            let lhs = mat_vec(&jt, &mat_vec(&jlk, x));
            let rhs = mat_vec(&jmk, x);
            for (a, b) in lhs.iter().zip(&rhs) {
                worst = worst.max(rat_to_f64(&(a - &lam * b).abs()));
            }
        }
    }
    Ok((xs.len(), worst))
}

/// Compares J_φ^{n,m,ℓ} with J_{φ′}^{n,n−m,n−ℓ}, φ′(t) = φ(t+m+ℓ−n), under
/// S ↦ S^⊥, T ↦ T^⊥. Returns the number of mismatched entries.
pub fn orth_complement_mismatches(field: &Field, n: usize, m: usize, l: usize, phi: &[BigRat]) -> Result<usize> {
    let q = field.q() as u64;
    let (ni, mi, li) = (n as i64, m as i64, l as i64);
    let a = j_matrix(ni, mi, li, q, phi, false)?.dense(field)?;
    let shift = mi + li - ni;
    let top = (ni - mi).min(ni - li);
    let phi2: Vec<BigRat> = (0..=top).map(|t| if t + shift >= 0 { coef(phi, t + shift) } else { BigRat::zero() }).collect();
    let b = j_matrix(ni, ni - mi, ni - li, q, &phi2, false)?.dense(field)?;
    let rows = enumerate(field, n, m, DEFAULT_SUBSPACE_CAP)?;
    let cols = enumerate(field, n, l, DEFAULT_SUBSPACE_CAP)?;
    let rows_c = crate::subspaces::SubspaceIndex::new(enumerate(field, n, n - m, DEFAULT_SUBSPACE_CAP)?);
    let cols_c = crate::subspaces::SubspaceIndex::new(enumerate(field, n, n - l, DEFAULT_SUBSPACE_CAP)?);
    let rmap: Vec<usize> = rows.iter().map(|s: &Subspace| rows_c.index_of(&s.orth()).ok_or(Error::Internal("missing complement".into()))).collect::<Result<_>>()?;
    let cmap: Vec<usize> = cols.iter().map(|s| cols_c.index_of(&s.orth()).ok_or(Error::Internal("missing complement".into()))).collect::<Result<_>>()?;
    let mut bad = 0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a.entry(i, j) != b.entry(rmap[i], cmap[j]) {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

/// |Λ̄_r(k)| ≤ 8 (n choose m)_q^{−1} q^{−k(m−r)/2}, checked for every r, k.
pub fn lambda_bar_bound_holds(n: i64, m: i64, l: i64, q: u64) -> Result<bool> {
    check_normalizable(n, m, l)?;
    let total = rat_to_f64(&rat_int(gauss_binomial(n, m, q)));
    for r in 0..=m.min(l) {
        for k in 0..=m.min(l) {
            let v = rat_to_f64(&lambda_bar(n, m, l, r, k, q)?.abs());
            let bound = 8.0 / total * libm::pow(q as f64, -((k * (m - r)) as f64) / 2.0);
            if v > bound * (1.0 + 1e-12) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Short human-readable description of the J parameters.
pub fn describe(m: &SubspaceMatrix) -> String {
    format!("J{}^({},{},{}) over q={}", if m.normalized { "bar" } else { "" }, m.n, m.m, m.l, m.q)
}
