//! Subspaces of F_q^n in canonical (reduced row-echelon) form, lattice
//! operations, enumeration and the external/internal counting formulas.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{check_cap, Error, Result};
use crate::gf::{Elem, Field};
use crate::matq::{unit_vector, MatQ};
use crate::qcomb::{gauss_binomial, qpow};
use crate::rng::RngStream;

/// Default cap on the number of enumerated subspaces.
pub const DEFAULT_SUBSPACE_CAP: u128 = 100_000;

/// A subspace of F_q^n stored as the rref of a basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: MatQ,
}

impl core::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Subspace(n={}, dim={}, {:?})", self.n, self.dim(), self.basis)
    }
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace { n, basis: MatQ::zeros(field, 0, n) }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace { n, basis: MatQ::identity(field, n) }
    }

    /// Span of the given vectors (each of length n).
    pub fn span(field: &Field, n: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::Shape(format!("vectors must have length {n}")));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, n));
        }
        let m = MatQ::from_rows(field, vectors)?;
        Ok(Subspace::from_row_space(&m))
    }

    /// Row space of a matrix.
    pub fn from_row_space(m: &MatQ) -> Subspace {
        let d = m.decompose();
        let basis = d.rref.submatrix(0, d.rank, 0, m.cols());
        Subspace { n: m.cols(), basis }
    }

    /// Column space of a matrix.
    pub fn from_col_space(m: &MatQ) -> Subspace {
        Subspace::from_row_space(&m.transpose())
    }

    /// Coordinate subspace span{e_i : i in idx} (0-based).
    pub fn coordinate(field: &Field, n: usize, idx: &[usize]) -> Subspace {
        let vs: Vec<Vec<Elem>> = idx.iter().map(|&i| unit_vector(n, i)).collect();
        Subspace::span(field, n, &vs).expect("coordinate vectors have length n")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &MatQ {
        &self.basis
    }
    pub fn field(&self) -> &Field {
        self.basis.field()
    }
    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.rows_vec()
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Shape(format!("ambient dimensions {} and {}", self.n, o.n)));
        }
        if **self.field() != **o.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let stacked = self.basis.vstack(&o.basis)?;
        Ok(Subspace::from_row_space(&stacked))
    }

    /// Orthogonal complement under the standard bilinear form.
    pub fn orth(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.n);
        }
        let k = self.basis.kernel();
        Subspace::span(self.field(), self.n, &k).expect("kernel vectors have length n")
    }

    /// S ∩ T computed as (S⊥ + T⊥)⊥.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        Ok(self.orth().sum(&o.orth())?.orth())
    }

    /// dim(S∩T) via dim S + dim T − dim(S+T).
    pub fn intersection_dim(&self, o: &Subspace) -> Result<usize> {
        Ok(self.dim() + o.dim() - self.sum(o)?.dim())
    }

    /// X(S) = {Xs : s in S} for X with `ambient_dim` columns.
    pub fn image(&self, x: &MatQ) -> Result<Subspace> {
        if x.cols() != self.n {
            return Err(Error::Shape(format!("image: X has {} columns, ambient dim is {}", x.cols(), self.n)));
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(self.field(), x.rows()));
        }
        let img = x.mul(&self.basis.transpose())?;
        Ok(Subspace::from_col_space(&img))
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::Shape("contains: vector length".into()));
        }
        let w = Subspace::span(self.field(), self.n, &[v.to_vec()])?;
        Ok(self.sum(&w)?.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> Result<bool> {
        Ok(self.sum(o)?.dim() == o.dim())
    }

    /// Embeds into F^{n+extra} by appending zero coordinates.
    pub fn pad_zeros(&self, extra: usize) -> Subspace {
        let mut m = MatQ::zeros(self.field(), self.dim(), self.n + extra);
        for i in 0..self.dim() {
            for j in 0..self.n {
                m.set(i, j, self.basis.get(i, j));
            }
        }
        Subspace { n: self.n + extra, basis: m }
    }

    /// Key used by index maps.
    pub fn key(&self) -> Vec<Elem> {
        self.basis.data().to_vec()
    }

    /// Uniform vector of the subspace.
    pub fn sample_vector(&self, rng: &mut RngStream) -> Vec<Elem> {
        let q = self.field().q() as u64;
        let coeffs: Vec<Elem> = (0..self.dim()).map(|_| rng.below(q) as Elem).collect();
        self.basis.vec_mul(&coeffs).expect("coefficient length equals dim")
    }
}

/// Enumerated subspaces of a fixed dimension with a reverse index.
#[derive(Debug, Clone)]
pub struct SubspaceIndex {
    pub list: Vec<Subspace>,
    map: BTreeMap<Vec<Elem>, usize>,
}

impl SubspaceIndex {
    pub fn new(list: Vec<Subspace>) -> SubspaceIndex {
        let map = list.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
        SubspaceIndex { list, map }
    }
    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.map.get(&s.key()).copied()
    }
    pub fn len(&self) -> usize {
        self.list.len()
    }
    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All k-dimensional subspaces of F_q^n: pivot sets in lexicographic order,
/// then free entries as a base-q counter (first free entry fastest).
pub fn enumerate(field: &Field, n: usize, k: usize, cap: u128) -> Result<Vec<Subspace>> {
    let total = gauss_binomial(n as i64, k as i64, field.q() as u64);
    let size: u128 = u128::try_from(total).unwrap_or(u128::MAX);
    check_cap("number of subspaces", size, cap)?;
    let q = field.q();
    let mut out = Vec::with_capacity(size as usize);
    for piv in combinations(n, k) {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            for j in p + 1..n {
                if !piv.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut m = MatQ::zeros(field, k, n);
            for (i, &p) in piv.iter().enumerate() {
                m.set(i, p, 1);
            }
            for (&(i, j), &v) in free.iter().zip(&counter) {
                m.set(i, j, v);
            }
            out.push(Subspace { n, basis: m });
            let mut pos = 0;
            loop {
                if pos == counter.len() {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < q {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == counter.len() {
                break;
            }
        }
    }
    Ok(out)
}

pub fn enumerate_indexed(field: &Field, n: usize, k: usize, cap: u128) -> Result<SubspaceIndex> {
    Ok(SubspaceIndex::new(enumerate(field, n, k, cap)?))
}

/// Number of dim-d subspaces X with C ⊆ X and A ∩ X = A ∩ C.
pub fn count_extensions(a: &Subspace, c: &Subspace, d: usize) -> Result<BigInt> {
    a.check(c)?;
    let q = a.field().q() as u64;
    let n = a.ambient_dim() as i64;
    let d = d as i64;
    let dc = c.dim() as i64;
    let da = a.dim() as i64;
    let dac = a.intersect(c)?.dim() as i64;
    let dsum = a.sum(c)?.dim() as i64;
    let b = gauss_binomial(n - dsum, d - dc, q);
    if b.is_zero() {
        return Ok(b);
    }
    Ok(qpow(q, ((da - dac) * (d - dc)) as u64) * b)
}

/// Number of dim-d subspaces X with B ⊆ X and dim(A ∩ X) = t.
pub fn count_with_intersection(a: &Subspace, b: &Subspace, d: usize, t: usize) -> Result<BigInt> {
    a.check(b)?;
    let q = a.field().q() as u64;
    let n = a.ambient_dim() as i64;
    let (da, db, d, t) = (a.dim() as i64, b.dim() as i64, d as i64, t as i64);
    let r = a.intersect(b)?.dim() as i64;
    let b1 = gauss_binomial(n - da - db + r, d - t - db + r, q);
    let b2 = gauss_binomial(da - r, t - r, q);
    if b1.is_zero() || b2.is_zero() {
        return Ok(BigInt::zero());
    }
    Ok(qpow(q, ((da - t) * (d - t - db + r)) as u64) * b1 * b2)
}

/// Number of dim-d subspaces T ⊆ S with dim(S' ∩ T) = t, where S' ⊆ S.
pub fn count_internal(s: &Subspace, s_sub: &Subspace, d: usize, t: usize) -> Result<BigInt> {
    if !s_sub.is_subspace_of(s)? {
        return Err(Error::Precondition("S' must be a subspace of S".into()));
    }
    let q = s.field().q() as u64;
    let (ds, dp, d, t) = (s.dim() as i64, s_sub.dim() as i64, d as i64, t as i64);
    let b1 = gauss_binomial(ds - dp, d - t, q);
    let b2 = gauss_binomial(dp, t, q);
    if b1.is_zero() || b2.is_zero() {
        return Ok(BigInt::zero());
    }
    Ok(qpow(q, ((dp - t) * (d - t)) as u64) * b1 * b2)
}

/// Feasible range of dim(S+T) for dim S = m, dim T = l in F^n.
pub fn sum_range(n: usize, m: usize, l: usize) -> (usize, usize) {
    (m.max(l), (m + l).min(n))
}

/// Feasible range of dim(S∩T).
pub fn intersection_range(n: usize, m: usize, l: usize) -> (usize, usize) {
    ((m + l).saturating_sub(n), m.min(l))
}

/// (span{e_1..e_m}, span{e_{d−l+1}..e_d}) with dim(S+T) = d.
pub fn construct_pair(field: &Field, n: usize, m: usize, l: usize, d: usize) -> Result<(Subspace, Subspace)> {
    let (lo, hi) = sum_range(n, m, l);
    if d < lo || d > hi {
        return Err(Error::Precondition(format!(
            "max{{m,l}} <= d <= min{{m+l,n}} fails: need {lo} <= d <= {hi}, got d = {d}"
        )));
    }
    let s = Subspace::coordinate(field, n, &(0..m).collect::<Vec<_>>());
    let t = Subspace::coordinate(field, n, &(d - l..d).collect::<Vec<_>>());
    Ok((s, t))
}

/// Pair with a prescribed intersection dimension, moved by a uniform change
/// of basis.
pub fn random_pair_with_intersection(
    field: &Field,
    n: usize,
    m: usize,
    l: usize,
    inter: usize,
    rng: &mut RngStream,
) -> Result<(Subspace, Subspace)> {
    if m + l < inter {
        return Err(Error::Precondition("dim(S∩T) <= m + l".into()));
    }
    let (s, t) = construct_pair(field, n, m, l, m + l - inter)?;
    let g = MatQ::sample_nonsingular(field, n, rng)?;
    Ok((s.image(&g)?, t.image(&g)?))
}

/// Parameters of an intersection-type problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub r: usize,
    pub big_r: usize,
}

/// SUM_{d,D} on (n,m,l) as INTERSECT_{m+l−d, m+l−D}.
pub fn sum_to_intersect(n: usize, m: usize, l: usize, d: usize, big_d: usize) -> Result<IntersectParams> {
    let (lo, hi) = sum_range(n, m, l);
    for x in [d, big_d] {
        if x < lo || x > hi {
            return Err(Error::Precondition(format!("max{{m,l}} <= d <= min{{m+l,n}}: {lo} <= {x} <= {hi}")));
        }
    }
    Ok(IntersectParams { n, m, l, r: m + l - d, big_r: m + l - big_d })
}

/// INTERSECT_{r,R} on (n,m,l) as SUM_{m+l−r, m+l−R}.
pub fn intersect_to_sum(p: IntersectParams) -> Result<(usize, usize)> {
    if p.r > p.m + p.l || p.big_r > p.m + p.l {
        return Err(Error::Precondition("intersection dimensions <= m + l".into()));
    }
    Ok((p.m + p.l - p.r, p.m + p.l - p.big_r))
}

/// (n,m,l,r,R) ↦ (n−r, m−r, l−r, 0, R−r).
pub fn padding_reduce(p: IntersectParams) -> Result<IntersectParams> {
    if !(p.r < p.big_r && p.big_r <= p.m.min(p.l)) {
        return Err(Error::Precondition(format!(
            "0 <= r < R <= min{{m,l}} fails at r = {}, R = {}, min{{m,l}} = {}",
            p.r,
            p.big_r,
            p.m.min(p.l)
        )));
    }
    if p.m.max(p.l) > p.n {
        return Err(Error::Precondition("max{m,l} <= n".into()));
    }
    Ok(IntersectParams { n: p.n - p.r, m: p.m - p.r, l: p.l - p.r, r: 0, big_r: p.big_r - p.r })
}

/// Lift S ⊆ F^{n−r} to span(φ(S) ∪ {e_{n−r+1},…,e_n}) ⊆ F^n.
pub fn padding_lift(s: &Subspace, r: usize) -> Result<Subspace> {
    let n = s.ambient_dim() + r;
    let padded = s.pad_zeros(r);
    let tail = Subspace::coordinate(s.field(), n, &(n - r..n).collect::<Vec<_>>());
    padded.sum(&tail)
}
