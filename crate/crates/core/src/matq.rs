//! Dense matrices over F_q.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{check_cap, Error, Result};
use crate::gf::{Elem, Field};
use crate::qcomb::BigRat;
use crate::rng::RngStream;

/// Default cap on q^{rows·cols} for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

/// Retry budget for rejection sampling of nonsingular matrices.
pub const NONSINGULAR_RETRY_CAP: usize = 10_000;

#[derive(Clone)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Field,
}

impl PartialEq for MatQ {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data && *self.field == *o.field
    }
}
impl Eq for MatQ {}

impl fmt::Debug for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, " /")?;
            }
            for j in 0..self.cols {
                write!(f, " {}", self.get(i, j))?;
            }
        }
        write!(f, " ]")
    }
}

/// Result of Gaussian elimination.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub rank: usize,
    /// Present iff the matrix is square.
    pub det: Option<Elem>,
    pub rref: MatQ,
    pub pivots: Vec<usize>,
    /// Basis of the right kernel {v : Av = 0}.
    pub kernel_basis: Vec<Vec<Elem>>,
}

/// Which side a random projection multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Sampling modes for [`MatQ::sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Uniform,
    Nonsingular,
    Rank(usize),
}

impl MatQ {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatQ {
        MatQ { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Field, n: usize) -> MatQ {
        let mut m = MatQ::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// I_r padded with zeros to `rows × cols`.
    pub fn partial_identity(field: &Field, rows: usize, cols: usize, r: usize) -> MatQ {
        let mut m = MatQ::zeros(field, rows, cols);
        for i in 0..r.min(rows).min(cols) {
            m.data[i * cols + i] = 1;
        }
        m
    }

    pub fn from_data(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<MatQ> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&x| x >= field.q()) {
            return Err(Error::Precondition(format!("entries must be < q = {}", field.q())));
        }
        Ok(MatQ { rows, cols, data, field: field.clone() })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<MatQ> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        MatQ::from_data(field, r, c, rows.concat())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn rows_vec(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_shape(&self, o: &MatQ, what: &str) -> Result<()> {
        if *self.field != *o.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &MatQ) -> Result<MatQ> {
        self.same_shape(o, "add")?;
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatQ { rows: self.rows, cols: self.cols, data, field: f.clone() })
    }

    pub fn sub(&self, o: &MatQ) -> Result<MatQ> {
        self.same_shape(o, "sub")?;
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatQ { rows: self.rows, cols: self.cols, data, field: f.clone() })
    }

    pub fn neg(&self) -> MatQ {
        let f = &self.field;
        MatQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.neg(a)).collect(), field: f.clone() }
    }

    pub fn scale(&self, c: Elem) -> MatQ {
        let f = &self.field;
        MatQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(c, a)).collect(), field: f.clone() }
    }

    pub fn mul(&self, o: &MatQ) -> Result<MatQ> {
        if *self.field != *o.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = &self.field;
        let mut out = MatQ::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, o.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// M·v for a column vector v.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("mul_vec: {} columns vs vector of length {}", self.cols, v.len())));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    /// vᵀ·M for a row vector v.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!("vec_mul: {} rows vs vector of length {}", self.rows, v.len())));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatQ {
        let mut out = MatQ::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// ⟨A, B⟩ = Σ A_ij B_ij.
    pub fn inner(&self, o: &MatQ) -> Result<Elem> {
        self.same_shape(o, "inner")?;
        let f = &self.field;
        Ok(self.data.iter().zip(&o.data).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> MatQ {
        let mut out = MatQ::zeros(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, o: &MatQ) -> Result<MatQ> {
        if self.cols != o.cols {
            return Err(Error::Shape("vstack: column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Ok(MatQ { rows: self.rows + o.rows, cols: self.cols, data, field: self.field.clone() })
    }

    pub fn hstack(&self, o: &MatQ) -> Result<MatQ> {
        if self.rows != o.rows {
            return Err(Error::Shape("hstack: row counts differ".into()));
        }
        let mut out = MatQ::zeros(&self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j));
            }
        }
        Ok(out)
    }

    /// Row-major base-q index Σ entries[j]·q^j.
    pub fn to_index(&self) -> u64 {
        let q = self.field.q() as u64;
        self.data.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
    }

    pub fn from_index(field: &Field, rows: usize, cols: usize, mut idx: u64) -> MatQ {
        let q = field.q() as u64;
        let mut m = MatQ::zeros(field, rows, cols);
        for d in m.data.iter_mut() {
            *d = (idx % q) as Elem;
            idx /= q;
        }
        m
    }

    /// Gaussian elimination with leftmost-column, topmost-row pivoting.
    pub fn decompose(&self) -> Decomposition {
        let f = &self.field;
        let mut a = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut det: Elem = 1;
        let mut swaps = 0usize;
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(src) = (pr..rows).find(|&i| a.get(i, c) != 0) else { continue };
            if src != pr {
                for j in 0..cols {
                    a.data.swap(src * cols + j, pr * cols + j);
                }
                swaps += 1;
            }
            let pv = a.get(pr, c);
            det = f.mul(det, pv);
            let inv = f.inv_nz(pv);
            for j in 0..cols {
                let v = a.get(pr, j);
                a.set(pr, j, f.mul(v, inv));
            }
            for i in 0..rows {
                if i == pr {
                    continue;
                }
                let factor = a.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let v = f.sub(a.get(i, j), f.mul(factor, a.get(pr, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        let rank = pivots.len();
        let det = if rows == cols {
            if rank < rows {
                Some(0)
            } else if swaps % 2 == 1 {
                Some(f.neg(det))
            } else {
                Some(det)
            }
        } else {
            None
        };
        let mut kernel_basis = Vec::new();
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(a.get(i, free));
            }
            kernel_basis.push(v);
        }
        Decomposition { rank, det, rref: a, pivots, kernel_basis }
    }

    /// Rank without building the kernel.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(src) = (pr..rows).find(|&i| a[i * cols + c] != 0) else { continue };
            if src != pr {
                for j in c..cols {
                    a.swap(src * cols + j, pr * cols + j);
                }
            }
            let inv = f.inv_nz(a[pr * cols + c]);
            for i in pr + 1..rows {
                let factor = f.mul(a[i * cols + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[pr * cols + j]));
                }
            }
            pr += 1;
        }
        pr
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::Shape("det of a non-square matrix".into()));
        }
        Ok(self.decompose().det.unwrap_or(0))
    }

    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        self.decompose().kernel_basis
    }

    pub fn sample_uniform(field: &Field, rows: usize, cols: usize, rng: &mut RngStream) -> MatQ {
        let q = field.q() as u64;
        let data = (0..rows * cols).map(|_| rng.below(q) as Elem).collect();
        MatQ { rows, cols, data, field: field.clone() }
    }

    pub fn sample_nonsingular(field: &Field, n: usize, rng: &mut RngStream) -> Result<MatQ> {
        for _ in 0..NONSINGULAR_RETRY_CAP {
            let m = MatQ::sample_uniform(field, n, n, rng);
            if m.rank() == n {
                return Ok(m);
            }
        }
        Err(Error::Internal(format!("no nonsingular sample after {NONSINGULAR_RETRY_CAP} draws")))
    }

    /// Uniform rank-r matrix as X·I_r·Y with X, Y uniform nonsingular.
    pub fn sample_rank(field: &Field, rows: usize, cols: usize, r: usize, rng: &mut RngStream) -> Result<MatQ> {
        if r > rows.min(cols) {
            return Err(Error::Precondition(format!("r = {r} <= min(rows, cols) = {}", rows.min(cols))));
        }
        if r == 0 {
            return Ok(MatQ::zeros(field, rows, cols));
        }
        let x = MatQ::sample_nonsingular(field, rows, rng)?;
        let y = MatQ::sample_nonsingular(field, cols, rng)?;
        x.mul(&MatQ::partial_identity(field, rows, cols, r))?.mul(&y)
    }

    pub fn sample(field: &Field, rows: usize, cols: usize, mode: SampleMode, rng: &mut RngStream) -> Result<MatQ> {
        match mode {
            SampleMode::Uniform => Ok(MatQ::sample_uniform(field, rows, cols, rng)),
            SampleMode::Nonsingular => {
                if rows != cols {
                    return Err(Error::Precondition("nonsingular sampling needs rows = cols".into()));
                }
                MatQ::sample_nonsingular(field, rows, rng)
            }
            SampleMode::Rank(r) => MatQ::sample_rank(field, rows, cols, r, rng),
        }
    }
}

/// Number of `rows × cols` matrices, failing if it exceeds `cap`.
pub fn matrix_space_size(field: &Field, rows: usize, cols: usize, cap: u128) -> Result<u64> {
    let q = field.q() as u128;
    let mut total: u128 = 1;
    for _ in 0..rows * cols {
        total = total.saturating_mul(q);
        if total > cap {
            break;
        }
    }
    check_cap("q^(rows*cols)", total, cap)?;
    Ok(total as u64)
}

/// All `rows × cols` matrices in index order.
pub fn enumerate_all(field: &Field, rows: usize, cols: usize, cap: u128) -> Result<impl Iterator<Item = MatQ>> {
    let total = matrix_space_size(field, rows, cols, cap)?;
    let field = field.clone();
    Ok((0..total).map(move |i| MatQ::from_index(&field, rows, cols, i)))
}

/// All rank-r matrices in index order.
pub fn enumerate_rank(field: &Field, rows: usize, cols: usize, r: usize, cap: u128) -> Result<Vec<MatQ>> {
    let it = enumerate_all(field, rows, cols, cap)?;
    if r > rows.min(cols) {
        return Ok(Vec::new());
    }
    Ok(it.filter(|m| m.rank() == r).collect())
}

/// Ranks of all n×m matrices, indexed by [`MatQ::to_index`].
pub fn rank_table(field: &Field, rows: usize, cols: usize, cap: u128) -> Result<Vec<u8>> {
    Ok(enumerate_all(field, rows, cols, cap)?.map(|m| m.rank() as u8).collect())
}

/// Determinants of all n×n matrices, indexed by [`MatQ::to_index`].
pub fn det_table(field: &Field, n: usize, cap: u128) -> Result<Vec<Elem>> {
    Ok(enumerate_all(field, n, n, cap)?.map(|m| m.det().unwrap_or(0)).collect())
}

/// Index of A+B given the indices of A and B (same shape).
pub fn add_indices(field: &Field, len: usize, a: u64, b: u64) -> u64 {
    let q = field.q() as u64;
    let (mut a, mut b) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..len {
        let s = field.add((a % q) as Elem, (b % q) as Elem) as u64;
        out += s * place;
        place *= q;
        a /= q;
        b /= q;
    }
    out
}

/// Index of −A.
pub fn neg_index(field: &Field, len: usize, a: u64) -> u64 {
    let q = field.q() as u64;
    let mut a = a;
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..len {
        out += field.neg((a % q) as Elem) as u64 * place;
        place *= q;
        a /= q;
    }
    out
}

/// Upper bound 4·q^{−(rk M − t)(d − t)} on Pr[rank drops to ≤ t].
pub fn projection_shrink_bound(q: u32, rank: usize, d: usize, t: usize) -> f64 {
    let e = (rank as f64 - t as f64) * (d as f64 - t as f64);
    4.0 * libm::pow(q as f64, -e)
}

fn projected_rank(m: &MatQ, x: &MatQ, side: Side) -> Result<usize> {
    Ok(match side {
        Side::Left => x.mul(m)?.rank(),
        Side::Right => m.mul(x)?.rank(),
    })
}

fn projector_shape(m: &MatQ, side: Side, d: usize) -> (usize, usize) {
    match side {
        Side::Left => (d, m.rows()),
        Side::Right => (m.cols(), d),
    }
}

/// Monte Carlo estimate of Pr[rk(XM) ≤ t] (left) or Pr[rk(MY) ≤ t] (right)
/// for a uniform projector with d rows (left) or d columns (right).
pub fn estimate_projection_shrink(
    m: &MatQ,
    side: Side,
    d: usize,
    t: usize,
    trials: u64,
    rng: &mut RngStream,
) -> Result<f64> {
    let rk = m.rank();
    if t > rk.min(d) {
        return Err(Error::Precondition(format!("t = {t} <= min(rk M, d) = {}", rk.min(d))));
    }
    let (pr, pc) = projector_shape(m, side, d);
    let mut hits = 0u64;
    for _ in 0..trials {
        let x = MatQ::sample_uniform(m.field(), pr, pc, rng);
        if projected_rank(m, &x, side)? <= t {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

/// Exact Pr[rk(XM) ≤ t] by enumerating every projector.
pub fn exact_projection_shrink(m: &MatQ, side: Side, d: usize, t: usize, cap: u128) -> Result<BigRat> {
    let (pr, pc) = projector_shape(m, side, d);
    let mut hits = 0u64;
    let mut total = 0u64;
    for x in enumerate_all(m.field(), pr, pc, cap)? {
        total += 1;
        if projected_rank(m, &x, side)? <= t {
            hits += 1;
        }
    }
    Ok(BigRat::new(BigInt::from(hits), BigInt::from(total)))
}

/// Elementary vector e_i of length n.
pub fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Formats as `[a b / c d]`.
pub fn bracket_string(m: &MatQ) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join(" / "))
}
