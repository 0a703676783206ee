//! Spectra as (value, multiplicity) lists with optional exact values.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::qcomb::{rat_sqrt_exact, rat_to_f64, BigRat};

/// Exact form of a spectral value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Rational(BigRat),
    /// The nonnegative square root of the payload.
    Sqrt(BigRat),
}

impl ExactValue {
    /// Canonical form: perfect squares under a root become rationals.
    pub fn normalize(self) -> ExactValue {
        match self {
            ExactValue::Sqrt(x) => match rat_sqrt_exact(&x) {
                Some(r) => ExactValue::Rational(r),
                None => ExactValue::Sqrt(x),
            },
            e => e,
        }
    }
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => rat_to_f64(r),
            ExactValue::Sqrt(x) => libm::sqrt(rat_to_f64(x)),
        }
    }
    pub fn square(&self) -> BigRat {
        match self {
            ExactValue::Rational(r) => r * r,
            ExactValue::Sqrt(x) => x.clone(),
        }
    }
    fn sign(&self) -> i8 {
        match self {
            ExactValue::Rational(r) if r.is_negative() => -1,
            ExactValue::Rational(r) if r.is_zero() => 0,
            ExactValue::Sqrt(x) if x.is_zero() => 0,
            _ => 1,
        }
    }
    /// Exact total order.
    pub fn cmp_exact(&self, o: &ExactValue) -> Ordering {
        let (sa, so) = (self.sign(), o.sign());
        if sa != so {
            return sa.cmp(&so);
        }
        let c = self.square().cmp(&o.square());
        if sa < 0 {
            c.reverse()
        } else {
            c
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub exact: Option<ExactValue>,
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    ClosedForm,
    Numeric,
}

/// Sorted (descending) list of distinct values with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    pub total_dim: BigInt,
    pub source: SpectrumSource,
}

impl SpectrumReport {
    /// Builds a closed-form report, merging exactly equal values and dropping
    /// zero multiplicities.
    pub fn closed_form(items: Vec<(ExactValue, BigInt)>) -> SpectrumReport {
        let mut merged: Vec<(ExactValue, BigInt)> = Vec::new();
        for (v, m) in items {
            if m.is_zero() {
                continue;
            }
            let v = v.normalize();
            if let Some(slot) = merged.iter_mut().find(|(w, _)| w.cmp_exact(&v) == Ordering::Equal) {
                slot.1 += m;
            } else {
                merged.push((v, m));
            }
        }
        merged.sort_by(|a, b| b.0.cmp_exact(&a.0));
        let total_dim = merged.iter().fold(BigInt::zero(), |acc, (_, m)| acc + m);
        let entries = merged
            .into_iter()
            .map(|(v, m)| SpectrumEntry { value: v.to_f64(), exact: Some(v), multiplicity: m })
            .collect();
        SpectrumReport { entries, total_dim, source: SpectrumSource::ClosedForm }
    }

    /// Groups numeric values that agree within `tol · max|value|`.
    pub fn numeric(mut values: Vec<f64>, tol: f64) -> SpectrumReport {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        let scale = values.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v))).max(f64::MIN_POSITIVE);
        let mut entries: Vec<(f64, f64, u64)> = Vec::new();
        for v in values.iter().copied() {
            match entries.last_mut() {
                Some((first, sum, cnt)) if libm::fabs(*first - v) <= tol * scale => {
                    *sum += v;
                    *cnt += 1;
                }
                _ => entries.push((v, v, 1)),
            }
        }
        let total = values.len() as u64;
        SpectrumReport {
            entries: entries
                .into_iter()
                .map(|(_, s, c)| SpectrumEntry { value: s / c as f64, exact: None, multiplicity: BigInt::from(c) })
                .collect(),
            total_dim: BigInt::from(total),
            source: SpectrumSource::Numeric,
        }
    }

    /// Every value repeated by multiplicity, descending; `None` past `limit`.
    pub fn expand(&self, limit: u64) -> Option<Vec<f64>> {
        if self.total_dim > BigInt::from(limit) {
            return None;
        }
        let mut out = Vec::new();
        for e in &self.entries {
            for _ in 0..e.multiplicity.to_u64()? {
                out.push(e.value);
            }
        }
        out.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        Some(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(libm::fabs(e.value)))
    }

    /// Σ value²·multiplicity, exact when every entry has an exact value.
    pub fn frobenius_sq_exact(&self) -> Option<BigRat> {
        let mut acc = BigRat::zero();
        for e in &self.entries {
            acc += e.exact.as_ref()?.square() * BigRat::from_integer(e.multiplicity.clone());
        }
        Some(acc)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.value * e.value * e.multiplicity.to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// Exact spectral radius when available.
    pub fn max_abs_exact(&self) -> Option<ExactValue> {
        let mut best: Option<ExactValue> = None;
        for e in &self.entries {
            let v = e.exact.as_ref()?;
            let a = match v {
                ExactValue::Rational(r) => ExactValue::Rational(r.abs()),
                s => s.clone(),
            };
            best = match best {
                Some(b) if b.cmp_exact(&a) != Ordering::Less => Some(b),
                _ => Some(a),
            };
        }
        best
    }

    /// Largest entrywise difference between the two expanded value lists,
    /// divided by the larger spectral radius. `None` if the dimensions differ
    /// or either list is too long to expand.
    pub fn max_relative_residual(&self, other: &SpectrumReport, limit: u64) -> Option<f64> {
        let a = self.expand(limit)?;
        let b = other.expand(limit)?;
        if a.len() != b.len() {
            return None;
        }
        let scale = self.max_abs().max(other.max_abs()).max(f64::MIN_POSITIVE);
        Some(a.iter().zip(&b).map(|(x, y)| libm::fabs(x - y) / scale).fold(0.0, f64::max))
    }
}
