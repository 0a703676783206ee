//! Fourier analysis on F_q^{n×n} and the dual witnesses for the determinant
//! and rank-versus-determinant problems.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::dual::DualMatrix;
use crate::error::{require, Error, Result};
use crate::gf::{Elem, Field};
use crate::matq::{add_indices, det_table, enumerate_all, matrix_space_size, rank_table, MatQ};
use crate::numeric::{singular_values, Dense};
use crate::qcomb::{count_nonsingular, count_rank_matrices, qpow, rat_int, rat_to_f64, BigRat};
use crate::rank_witness::{gamma_full, phi_build, qcc_bits_unclamped_log2, WitnessVector};

/// Size guard: q^{n²} ≤ this for every dense transform.
pub const FOURIER_CAP: u128 = 4096;

/// A complex function on F_q^{n×n}, indexed by the base-q matrix index.
#[derive(Debug, Clone)]
pub struct MatrixFunction {
    pub n: usize,
    pub field: Field,
    pub values: Vec<Complex64>,
}

/// Precomputed character data for F_q^{n×n}.
struct CharTable {
    size: usize,
    p: u32,
    /// digits[idx] = entries of the matrix with that index.
    digits: Vec<Vec<Elem>>,
    /// phase of a·x, flattened q×q.
    prod_phase: Vec<u32>,
    roots: Vec<Complex64>,
    q: usize,
}

impl CharTable {
    fn new(field: &Field, n: usize) -> Result<CharTable> {
        let size = matrix_space_size(field, n, n, FOURIER_CAP)? as usize;
        let q = field.q() as usize;
        let digits = enumerate_all(field, n, n, FOURIER_CAP)?.map(|m| m.data().to_vec()).collect();
        let mut prod_phase = vec![0; q * q];
        for a in 0..q {
            for x in 0..q {
                prod_phase[a * q + x] = field.phase(field.mul(a as Elem, x as Elem));
            }
        }
        let p = field.p();
        let roots = (0..p)
            .map(|e| {
                let t = 2.0 * core::f64::consts::PI * e as f64 / p as f64;
                Complex64::new(libm::cos(t), libm::sin(t))
            })
            .collect();
        Ok(CharTable { size, p, digits, prod_phase, roots, q })
    }

    /// Exponent e with ω^{⟨A,X⟩} = ω^e.
    #[inline]
    fn inner_phase(&self, a: usize, x: usize) -> u32 {
        let (da, dx) = (&self.digits[a], &self.digits[x]);
        let mut e = 0;
        for j in 0..da.len() {
            e += self.prod_phase[da[j] as usize * self.q + dx[j] as usize];
        }
        e % self.p
    }
}

impl MatrixFunction {
    pub fn new(n: usize, field: &Field, values: Vec<Complex64>) -> Result<MatrixFunction> {
        let size = matrix_space_size(field, n, n, FOURIER_CAP)? as usize;
        if values.len() != size {
            return Err(Error::Shape(alloc::format!("{} values for {size} matrices", values.len())));
        }
        Ok(MatrixFunction { n, field: field.clone(), values })
    }

    pub fn from_real(n: usize, field: &Field, values: &[f64]) -> Result<MatrixFunction> {
        MatrixFunction::new(n, field, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Builds f from a closure on matrices.
    pub fn tabulate(n: usize, field: &Field, mut f: impl FnMut(&MatQ) -> Complex64) -> Result<MatrixFunction> {
        let values = enumerate_all(field, n, n, FOURIER_CAP)?.map(|m| f(&m)).collect();
        Ok(MatrixFunction { n, field: field.clone(), values })
    }

    /// The character χ_B(X) = ω^{⟨B,X⟩}.
    pub fn character(n: usize, field: &Field, b: &MatQ) -> Result<MatrixFunction> {
        let t = CharTable::new(field, n)?;
        let bi = b.to_index() as usize;
        Ok(MatrixFunction { n, field: field.clone(), values: (0..t.size).map(|x| t.roots[t.inner_phase(bi, x) as usize]).collect() })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// E_X |f(X)|².
    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// f̂(A) = q^{−n²} Σ_X f(X) ω^{−⟨A,X⟩}.
pub fn fourier(f: &MatrixFunction) -> Result<MatrixFunction> {
    let t = CharTable::new(&f.field, f.n)?;
    let scale = 1.0 / t.size as f64;
    let values = (0..t.size)
        .map(|a| {
            let mut acc = Complex64::zero();
            for (x, v) in f.values.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let e = t.inner_phase(a, x);
                acc += v * t.roots[((t.p - e) % t.p) as usize];
            }
            acc * scale
        })
        .collect();
    Ok(MatrixFunction { n: f.n, field: f.field.clone(), values })
}

/// f(X) = Σ_A f̂(A) ω^{⟨A,X⟩}.
pub fn inverse_fourier(fh: &MatrixFunction) -> Result<MatrixFunction> {
    let t = CharTable::new(&fh.field, fh.n)?;
    let values = (0..t.size)
        .map(|x| {
            let mut acc = Complex64::zero();
            for (a, v) in fh.values.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                acc += v * t.roots[t.inner_phase(a, x) as usize];
            }
            acc
        })
        .collect();
    Ok(MatrixFunction { n: fh.n, field: fh.field.clone(), values })
}

/// |E|f|² − Σ|f̂|²|.
pub fn parseval_residual(f: &MatrixFunction) -> Result<f64> {
    let fh = fourier(f)?;
    let rhs: f64 = fh.values.iter().map(|v| v.norm_sqr()).sum();
    Ok(libm::fabs(f.mean_square() - rhs))
}

/// max_X |f(X) − (f̂)ˇ(X)|.
pub fn roundtrip_residual(f: &MatrixFunction) -> Result<f64> {
    let back = inverse_fourier(&fourier(f)?)?;
    Ok(f.values.iter().zip(&back.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone)]
pub struct ComplexDense {
    pub size: usize,
    pub data: Vec<Complex64>,
}

impl ComplexDense {
    fn mul(&self, o: &ComplexDense) -> ComplexDense {
        let n = self.size;
        let mut out = vec![Complex64::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        ComplexDense { size: n, data: out }
    }
}

/// H_n = q^{−n²/2} [ω^{⟨A,B⟩}].
pub fn h_matrix(n: usize, field: &Field) -> Result<ComplexDense> {
    let t = CharTable::new(field, n)?;
    let s = 1.0 / libm::sqrt(t.size as f64);
    let mut data = Vec::with_capacity(t.size * t.size);
    for a in 0..t.size {
        for b in 0..t.size {
            data.push(t.roots[t.inner_phase(a, b) as usize] * s);
        }
    }
    Ok(ComplexDense { size: t.size, data })
}

/// ‖H H* − I‖_∞ (entrywise max).
pub fn h_unitarity_residual(n: usize, field: &Field) -> Result<f64> {
    let h = h_matrix(n, field)?;
    let sz = h.size;
    let hstar = ComplexDense {
        size: sz,
        data: (0..sz * sz).map(|idx| h.data[(idx % sz) * sz + idx / sz].conj()).collect(),
    };
    let p = h.mul(&hstar);
    let mut worst: f64 = 0.0;
    for i in 0..sz {
        for j in 0..sz {
            let target = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() };
            worst = worst.max((p.data[i * sz + j] - target).norm());
        }
    }
    Ok(worst)
}

/// max |[φ(X+Y)] − H D H| with D = diag(q^{n²} φ̂).
pub fn factorization_residual(phi: &MatrixFunction) -> Result<f64> {
    let h = h_matrix(phi.n, &phi.field)?;
    let fh = fourier(phi)?;
    let sz = h.size;
    let mut hd = h.clone();
    for i in 0..sz {
        for j in 0..sz {
            hd.data[i * sz + j] *= fh.values[j] * sz as f64;
        }
    }
    let prod = hd.mul(&h);
    let mut worst: f64 = 0.0;
    for x in 0..sz {
        for y in 0..sz {
            let s = add_indices(&phi.field, phi.n * phi.n, x as u64, y as u64) as usize;
            worst = worst.max((prod.data[x * sz + y] - phi.values[s]).norm());
        }
    }
    Ok(worst)
}

/// Singular values q^{n²}|φ̂(A)| of [φ(X+Y)], descending.
pub fn convolution_singular_values(phi: &MatrixFunction) -> Result<Vec<f64>> {
    let fh = fourier(phi)?;
    let n = fh.values.len() as f64;
    let mut v: Vec<f64> = fh.values.iter().map(|c| c.norm() * n).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(v)
}

/// |SL(F_q, n)| = |M_n| / (q − 1).
pub fn sl_size(n: i64, q: u64) -> BigInt {
    count_nonsingular(n, q) / BigInt::from(q - 1)
}

/// g_{u,v}(X) = −1 if det X = u, 1 if det X = v, 0 otherwise.
pub fn g_uv(n: usize, field: &Field, u: Elem, v: Elem) -> Result<MatrixFunction> {
    let dets = det_table(field, n, FOURIER_CAP)?;
    let values = dets
        .iter()
        .map(|&d| {
            Complex64::new(
                if d == u {
                    -1.0
                } else if d == v {
                    1.0
                } else {
                    0.0
                },
                0.0,
            )
        })
        .collect();
    MatrixFunction::new(n, field, values)
}

/// Fourier spectrum of g_{u,v} grouped by det A, with the checks that it
/// vanishes on singular A and is constant on each determinant class.
#[derive(Debug, Clone)]
pub struct GuvSpectrum {
    pub transform: MatrixFunction,
    /// Mean of ĝ over {A : det A = d}.
    pub by_det: BTreeMap<Elem, Complex64>,
    /// max |ĝ(A)| over singular A.
    pub singular_max: f64,
    /// Largest deviation from the class mean within a determinant class.
    pub class_spread: f64,
    pub sup_norm: f64,
    pub sl_size: BigInt,
    /// |SL|^{−1/2}.
    pub sup_bound: f64,
    pub singular_count: usize,
}

pub fn g_uv_spectrum(n: usize, field: &Field, u: Elem, v: Elem) -> Result<GuvSpectrum> {
    require(u != v, "u != v")?;
    require(u != 0 && v != 0, "u and v nonzero")?;
    require(u < field.q() && v < field.q(), "u, v in the field")?;
    let g = g_uv(n, field, u, v)?;
    let gh = fourier(&g)?;
    let dets = det_table(field, n, FOURIER_CAP)?;
    let mut sums: BTreeMap<Elem, (Complex64, usize)> = BTreeMap::new();
    let mut singular_max: f64 = 0.0;
    let mut singular_count = 0;
    for (a, &d) in dets.iter().enumerate() {
        if d == 0 {
            singular_max = singular_max.max(gh.values[a].norm());
            singular_count += 1;
        }
        let e = sums.entry(d).or_insert((Complex64::zero(), 0));
        e.0 += gh.values[a];
        e.1 += 1;
    }
    let by_det: BTreeMap<Elem, Complex64> = sums.iter().map(|(&d, &(s, c))| (d, s / c as f64)).collect();
    let class_spread = dets
        .iter()
        .enumerate()
        .map(|(a, d)| (gh.values[a] - by_det[d]).norm())
        .fold(0.0, f64::max);
    let sl = sl_size(n as i64, field.q() as u64);
    let sup_bound = 1.0 / libm::sqrt(rat_to_f64(&rat_int(sl.clone())));
    Ok(GuvSpectrum {
        sup_norm: gh.sup_norm(),
        transform: gh,
        by_det,
        singular_max,
        class_spread,
        sl_size: sl,
        sup_bound,
        singular_count,
    })
}

/// G_u: entries q^{−n²}/|SL| where det(X+Y) = u, zero elsewhere.
pub fn det_witness(n: usize, field: &Field, u: Elem) -> Result<DualMatrix> {
    require(u != 0, "u != 0")?;
    let dets = det_table(field, n, FOURIER_CAP)?;
    let size = dets.len();
    let q = field.q() as u64;
    let val = BigRat::new(1.into(), qpow(q, (n * n) as u64) * sl_size(n as i64, q));
    let mut labels = vec![0u32; size * size];
    for x in 0..size {
        for y in 0..size {
            let s = add_indices(field, n * n, x as u64, y as u64) as usize;
            labels[x * size + y] = (dets[s] == u) as u32;
        }
    }
    Ok(DualMatrix {
        rows: size,
        cols: size,
        labels,
        class_values: vec![BigRat::zero(), val],
        row_index: String::from("n x n matrices by base-q index"),
        col_index: String::from("n x n matrices by base-q index"),
    })
}

/// Norms of G_v − G_u.
#[derive(Debug, Clone)]
pub struct PairNorms {
    pub l1: BigRat,
    /// Spectral norm via the Fourier transform.
    pub spectral: f64,
    /// |SL|^{−3/2}.
    pub bound_sl: f64,
    /// 8 q^{−3(n²−1)/2}.
    pub bound_q: f64,
}

/// Function X ↦ ([det X = v] − [det X = u]) q^{−n²}/|SL|.
fn g_diff_function(n: usize, field: &Field, u: Elem, v: Elem) -> Result<MatrixFunction> {
    let q = field.q() as u64;
    let scale = 1.0 / rat_to_f64(&rat_int(qpow(q, (n * n) as u64) * sl_size(n as i64, q)));
    let g = g_uv(n, field, u, v)?;
    Ok(MatrixFunction { n, field: field.clone(), values: g.values.iter().map(|c| c * scale).collect() })
}

pub fn pair_norms(n: usize, field: &Field, u: Elem, v: Elem) -> Result<PairNorms> {
    require(u != 0 && v != 0, "u and v nonzero")?;
    let q = field.q() as u64;
    let sl = rat_to_f64(&rat_int(sl_size(n as i64, q)));
    let (l1, spectral) = if u == v {
        (BigRat::zero(), 0.0)
    } else {
        let sv = convolution_singular_values(&g_diff_function(n, field, u, v)?)?;
        (BigRat::from_integer(2.into()), sv[0])
    };
    let nn = (n * n) as f64;
    Ok(PairNorms {
        l1,
        spectral,
        bound_sl: libm::pow(sl, -1.5),
        bound_q: 8.0 * libm::pow(q as f64, -1.5 * (nn - 1.0)),
    })
}

/// Dense SVD of G_v − G_u for cross-checking [`pair_norms`].
pub fn pair_spectral_dense(n: usize, field: &Field, u: Elem, v: Elem) -> Result<f64> {
    let gu = det_witness(n, field, u)?.to_dense();
    let gv = det_witness(n, field, v)?.to_dense();
    let diff = Dense { rows: gu.rows, cols: gu.cols, data: gv.data.iter().zip(&gu.data).map(|(a, b)| a - b).collect() };
    Ok(singular_values(&diff)[0])
}

/// ¼(n²−3) log₂ q − ½ log₂(12/γ).
pub fn det_cc_bound(n: i64, q: u64, gamma: f64) -> Result<f64> {
    require(gamma > 0.0 && gamma <= 1.0, "0 < gamma <= 1")?;
    require(n >= 1, "n >= 1")?;
    Ok(0.25 * ((n * n) as f64 - 3.0) * libm::log2(q as f64) - 0.5 * libm::log2(12.0 / gamma))
}

/// The witness chain behind [`det_cc_bound`].
#[derive(Debug, Clone)]
pub struct DetWitnessChain {
    pub spectral: f64,
    /// γ‖G_b − G_a‖₁/‖G_b − G_a‖ = 2γ/‖G_b − G_a‖.
    pub trace_lb: f64,
    /// γ q^{3(n²−1)/2} / 4.
    pub trace_lb_published: f64,
    /// ½ log₂(trace_lb/(3 q^{n²})), unclamped.
    pub witness_bits: f64,
    pub formula_bits: f64,
}

pub fn det_witness_chain(n: usize, field: &Field, a: Elem, b: Elem, gamma: f64) -> Result<DetWitnessChain> {
    require(a != b, "a != b")?;
    let pn = pair_norms(n, field, a, b)?;
    let q = field.q() as u64;
    let trace_lb = 2.0 * gamma / pn.spectral;
    let nn = (n * n) as f64;
    let side = qpow(q, (n * n) as u64);
    Ok(DetWitnessChain {
        spectral: pn.spectral,
        trace_lb,
        trace_lb_published: 0.25 * gamma * libm::pow(q as f64, 1.5 * (nn - 1.0)),
        witness_bits: qcc_bits_unclamped_log2(libm::log2(trace_lb), &side, &side),
        formula_bits: det_cc_bound(n as i64, q, gamma)?,
    })
}

/// Φ = E_φ + Σ_{b∉{0,a}} φ(n)/(q−1)·(G_a − G_b) as a function of X = A+B.
#[derive(Debug, Clone)]
pub struct RankDetWitness {
    pub n: usize,
    pub k: i64,
    pub a: Elem,
    pub l: i64,
    pub m: i64,
    pub phi: WitnessVector,
    /// Φ(X) from the defining combination.
    pub by_definition: Vec<BigRat>,
    /// Φ(X) from the three-case simplified formula.
    pub by_claim: Vec<BigRat>,
    pub mismatches: usize,
    /// ‖Φ‖₁ over the full matrix.
    pub l1: BigRat,
    /// Σ_{dom F} F·Φ.
    pub correlation: BigRat,
    /// Σ_{outside dom F} |Φ|.
    pub off_domain: BigRat,
    /// Spectral norm via the Fourier transform.
    pub spectral: f64,
    /// 136 q^{−ℓ(k−ℓ−m+1)/2} q^{−n²} ‖φ‖₁.
    pub spectral_bound: f64,
}

pub fn rankdet_witness(n: usize, field: &Field, k: i64, a: Elem, l: i64, m: i64) -> Result<RankDetWitness> {
    require(n as i64 > k && k >= 1, "n > k >= 1")?;
    require(a != 0 && a < field.q(), "a nonzero field element")?;
    let q = field.q() as u64;
    let ni = n as i64;
    let phi = phi_build(ni, k, l, m, q)?;
    let ranks = rank_table(field, n, n, FOURIER_CAP)?;
    let dets = det_table(field, n, FOURIER_CAP)?;
    let qn2 = qpow(q, (n * n) as u64);
    let sl = sl_size(ni, q);
    let g_val = BigRat::new(1.into(), &qn2 * &sl);
    let e_val: Vec<BigRat> = (0..=ni)
        .map(|r| phi.get(r) / rat_int(&qn2 * count_rank_matrices(ni, ni, r, q)))
        .collect();
    let coef = phi.get(ni) / rat_int(BigInt::from(q - 1));
    let mut by_definition = Vec::with_capacity(ranks.len());
    let mut by_claim = Vec::with_capacity(ranks.len());
    for (&rk, &d) in ranks.iter().zip(&dets) {
        // E_φ part.
        let mut v = e_val[rk as usize].clone();
        // Σ_{b∉{0,a}} coef·(G_a − G_b).
        for b in 1..field.q() {
            if b == a {
                continue;
            }
            if d == a {
                v += &coef * &g_val;
            }
            if d == b {
                v -= &coef * &g_val;
            }
        }
        by_definition.push(v);
        let c = if d == 0 {
            e_val[rk as usize].clone()
        } else if d == a {
            phi.get(ni) * &g_val
        } else {
            BigRat::zero()
        };
        by_claim.push(c);
    }
    let mismatches = by_definition.iter().zip(&by_claim).filter(|(x, y)| x != y).count();
    let size = rat_int(qn2.clone());
    let mut l1 = BigRat::zero();
    let mut correlation = BigRat::zero();
    let mut off_domain = BigRat::zero();
    for ((&rk, &d), v) in ranks.iter().zip(&dets).zip(&by_definition) {
        l1 += v.abs();
        if rk as i64 == k {
            correlation -= v;
        } else if d == a {
            correlation += v;
        } else {
            off_domain += v.abs();
        }
    }
    l1 *= &size;
    correlation *= &size;
    off_domain *= &size;
    let f = MatrixFunction::new(n, field, by_definition.iter().map(|v| Complex64::new(rat_to_f64(v), 0.0)).collect())?;
    let spectral = convolution_singular_values(&f)?[0];
    let qf = q as f64;
    let spectral_bound = 136.0
        * libm::pow(qf, -((l * (k - l - m + 1)) as f64) / 2.0)
        * libm::pow(qf, -((n * n) as f64))
        * rat_to_f64(&phi.l1());
    Ok(RankDetWitness {
        n,
        k,
        a,
        l,
        m,
        phi,
        by_definition,
        by_claim,
        mismatches,
        l1,
        correlation,
        off_domain,
        spectral,
        spectral_bound,
    })
}

impl RankDetWitness {
    /// Dense [Φ(A+B)] as a class-labelled matrix (one class per X).
    pub fn dense(&self, field: &Field) -> DualMatrix {
        let size = self.by_definition.len();
        let mut labels = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                labels[x * size + y] = add_indices(field, self.n * self.n, x as u64, y as u64) as u32;
            }
        }
        DualMatrix {
            rows: size,
            cols: size,
            labels,
            class_values: self.by_definition.clone(),
            row_index: String::from("n x n matrices by base-q index"),
            col_index: String::from("n x n matrices by base-q index"),
        }
    }

    /// Witness bound (correlation − δ‖Φ‖₁ − off-domain)/‖Φ‖.
    pub fn trace_lb(&self, delta: f64) -> f64 {
        (rat_to_f64(&self.correlation) - delta * rat_to_f64(&self.l1) - rat_to_f64(&self.off_domain)) / self.spectral
    }
}

/// Entrywise check of a dense rank-vs-determinant witness against the
/// three-case formula, computed directly from rk(A+B) and det(A+B).
pub fn rankdet_dense_mismatches(w: &RankDetWitness, field: &Field) -> Result<usize> {
    let n = w.n;
    let q = field.q() as u64;
    let ni = n as i64;
    let dense = w.dense(field);
    let mats: Vec<MatQ> = enumerate_all(field, n, n, FOURIER_CAP)?.collect();
    let qn2 = qpow(q, (n * n) as u64);
    let g_val = BigRat::new(1.into(), &qn2 * sl_size(ni, q));
    let mut bad = 0;
    for (i, a) in mats.iter().enumerate() {
        for (j, b) in mats.iter().enumerate() {
            let s = a.add(b)?;
            let d = s.decompose();
            let det = d.det.unwrap_or(0);
            let expect = if det == 0 {
                w.phi.get(d.rank as i64) / rat_int(&qn2 * count_rank_matrices(ni, ni, d.rank as i64, q))
            } else if det == w.a {
                w.phi.get(ni) * &g_val
            } else {
                BigRat::zero()
            };
            if *dense.entry(i, j) != expect {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

/// E_{X ∈ M_n} ω^{X₁₁+⋯+X_rr}, exactly for p = 2.
#[derive(Debug, Clone)]
pub struct TraceCheck {
    pub value: Complex64,
    pub exact: Option<BigRat>,
    pub expected: BigRat,
    pub residual: f64,
}

pub fn nonsingularity_trace_check(n: usize, field: &Field, r: usize) -> Result<TraceCheck> {
    require(r <= n, "r <= n")?;
    let p = field.p();
    let mut counts = vec![0u64; p as usize];
    let mut total = 0u64;
    for x in enumerate_all(field, n, n, FOURIER_CAP)? {
        if x.rank() != n {
            continue;
        }
        total += 1;
        let tr = (0..r).fold(0, |acc, i| field.add(acc, x.get(i, i)));
        counts[field.phase(tr) as usize] += 1;
    }
    let mut value = Complex64::zero();
    for (e, &c) in counts.iter().enumerate() {
        let t = 2.0 * core::f64::consts::PI * e as f64 / p as f64;
        value += Complex64::new(libm::cos(t), libm::sin(t)) * c as f64;
    }
    value /= total as f64;
    let exact = if p == 2 {
        Some(BigRat::new(BigInt::from(counts[0] as i64 - counts[1] as i64), BigInt::from(total)))
    } else {
        None
    };
    let expected = gamma_full(n as i64, r as i64, field.q() as u64)?;
    let residual = (value - Complex64::new(rat_to_f64(&expected), 0.0)).norm();
    Ok(TraceCheck { value, exact, expected, residual })
}

/// Lower bound for the determinant problem at error ½ − ¼q^{−(n−1)/3}:
/// nonzero pairs use the Fourier witness, pairs with a zero reduce to the
/// rank-versus-determinant problem with k = n − 1. Returns (case bits, bits).
pub fn det_intro_bits(n: i64, q: u64, a: Elem, b: Elem) -> Result<(f64, f64)> {
    require(n >= 2, "n >= 2")?;
    require(a != b, "a != b")?;
    if a != 0 && b != 0 {
        let gamma = 0.5 * libm::pow(q as f64, -((n - 1) as f64) / 3.0);
        let c = det_cc_bound(n, q, gamma)?;
        Ok((c, c.max(1.0)))
    } else {
        let cb = crate::rank_witness::canonical_rank_bound(n - 1, q)?;
        Ok((cb.case_bits, cb.bits))
    }
}
