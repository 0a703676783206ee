//! Dense real linear algebra for spectral cross-checks: cyclic Jacobi for
//! symmetric eigenvalues, one-sided (Hestenes) Jacobi for singular values,
//! and exact rational elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::qcomb::BigRat;

/// Relative convergence threshold of the Jacobi iterations (times ‖M‖_F).
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Dense {
        Dense { rows, cols, data: vec![0.0; rows * cols] }
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }
    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }
    pub fn transpose(&self) -> Dense {
        let mut t = Dense::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn mul(&self, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let mut out = Dense::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }
    pub fn max_abs_diff(&self, o: &Dense) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max)
    }
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| libm::fabs(self.get(i, j) - self.get(j, i)) <= tol))
    }
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn sym_eigenvalues(m: &Dense) -> Vec<f64> {
    assert_eq!(m.rows, m.cols, "eigenvalues need a square matrix");
    let n = m.rows;
    let mut a = m.data.clone();
    let threshold = JACOBI_TOL * m.frobenius();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if libm::sqrt(off) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if libm::fabs(apq) <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

/// Singular values (min(rows, cols) of them), sorted descending.
pub fn singular_values(m: &Dense) -> Vec<f64> {
    // Work on the orientation with fewer columns; store columns contiguously.
    let t = if m.cols > m.rows { m.transpose() } else { m.clone() };
    let (rows, cols) = (t.rows, t.cols);
    let mut colv: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| t.get(i, j)).collect()).collect();
    let fro = t.frobenius();
    let floor = (JACOBI_TOL * fro) * (JACOBI_TOL * fro);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let (alpha, beta, gamma) = {
                    let (ci, cj) = (&colv[i], &colv[j]);
                    let mut a = 0.0;
                    let mut b = 0.0;
                    let mut g = 0.0;
                    for k in 0..rows {
                        a += ci[k] * ci[k];
                        b += cj[k] * cj[k];
                        g += ci[k] * cj[k];
                    }
                    (a, b, g)
                };
                if libm::fabs(gamma) <= floor || libm::fabs(gamma) <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let tt = if zeta >= 0.0 {
                    1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + tt * tt);
                let s = c * tt;
                let (left, right) = colv.split_at_mut(j);
                let (ci, cj) = (&mut left[i], &mut right[0]);
                for k in 0..rows {
                    let x = ci[k];
                    let y = cj[k];
                    ci[k] = c * x - s * y;
                    cj[k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = colv.iter().map(|c| libm::sqrt(c.iter().map(|x| x * x).sum())).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Spectral norm via [`singular_values`].
pub fn spectral_norm(m: &Dense) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Reduced row-echelon form over Q; returns (rref, pivot columns).
pub fn rat_rref(m: &[Vec<BigRat>]) -> (Vec<Vec<BigRat>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRat>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(src, pr);
        let inv = BigRat::one() / &a[pr][c];
        for x in a[pr].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[pr].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pr || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (a, pivots)
}

pub fn rat_rank(m: &[Vec<BigRat>]) -> usize {
    rat_rref(m).1.len()
}

/// Basis of {x : Mx = 0} over Q.
pub fn rat_nullspace(m: &[Vec<BigRat>]) -> Vec<Vec<BigRat>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (r, pivots) = rat_rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![BigRat::zero(); cols];
        v[free] = BigRat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Relative difference |a − b| / max(|a|, |b|, floor).
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    let scale = libm::fabs(a).max(libm::fabs(b)).max(floor);
    libm::fabs(a - b) / scale
}

/// Largest |x| in a rational slice.
pub fn rat_max_abs(v: &[BigRat]) -> BigRat {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigRat::zero)
}
