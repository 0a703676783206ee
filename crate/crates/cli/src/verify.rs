//! Invariant suite behind `rankcc verify`. Every check runs at desk scale
//! and is deterministic given the seed.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rankcc_core::fourier_det::{self, MatrixFunction};
use rankcc_core::gf::field_from_q;
use rankcc_core::matq::{enumerate_all, MatQ};
use rankcc_core::protocols::{self, LargeErrorVariant};
use rankcc_core::qcomb::{self, count_rank_matrices, gauss_binomial, qpow_rat, rat_int, BigRat};
use rankcc_core::rank_witness as rw;
use rankcc_core::subspace_witness as sw;
use rankcc_core::subspaces::{self, intersect_to_sum, sum_to_intersect, Subspace};
use rankcc_core::{Error, Result, RngStream};
use serde_json::{json, Map, Value};

use crate::commands::SPECTRUM_TOL;
use crate::ctx::Ctx;
use crate::report::num;
use crate::{tolerance, CmdOutput};

pub const MODULES: [&str; 8] = ["gf", "qcomb", "matq", "subspaces", "rank_witness", "fourier_det", "subspace_witness", "protocols"];

/// Residual limit for floating sums whose exact value is known.
pub const FLOAT_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub params: String,
    pub pass: bool,
    /// Largest residual, where a numeric comparison is involved.
    pub residual: Option<f64>,
}

struct Suite {
    module: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn add(&mut self, name: &str, params: String, pass: bool) {
        self.checks.push(Check { module: self.module, name: name.into(), params, pass, residual: None });
    }
    fn add_residual(&mut self, name: &str, params: String, residual: f64, tol: f64) {
        self.checks.push(Check { module: self.module, name: name.into(), params, pass: residual <= tol, residual: Some(residual) });
    }
    fn add_result(&mut self, name: &str, params: String, r: Result<bool>) {
        match r {
            Ok(p) => self.add(name, params, p),
            Err(e) => self.add(name, format!("{params}; error: {e}"), false),
        }
    }
}

pub fn run_suite(scope: &str, seed: u64) -> Result<Vec<Check>> {
    let mods: Vec<&'static str> = if scope == "all" {
        MODULES.to_vec()
    } else {
        match MODULES.iter().find(|m| **m == scope) {
            Some(m) => vec![*m],
            None => return Err(Error::Precondition(format!("scope must be all|{}", MODULES.join("|")))),
        }
    };
    let mut all = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let mut s = Suite { module: m, checks: Vec::new() };
        let rng = RngStream::new(seed).split(i as u64);
        match *m {
            "gf" => gf(&mut s)?,
            "qcomb" => qcomb_checks(&mut s)?,
            "matq" => matq(&mut s, rng)?,
            "subspaces" => subspace_checks(&mut s, rng)?,
            "rank_witness" => rank_witness(&mut s)?,
            "fourier_det" => fourier(&mut s, rng)?,
            "subspace_witness" => subspace_witness(&mut s)?,
            _ => protocol_checks(&mut s, seed)?,
        }
        all.extend(s.checks);
    }
    Ok(all)
}

pub fn command(scope: &str, ctx: &mut Ctx) -> Result<CmdOutput> {
    let seed = ctx.u64("seed", 7)?;
    let checks = run_suite(scope, seed)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut per_module: Map<String, Value> = Map::new();
    for c in &checks {
        let e = per_module.entry(c.module.to_string()).or_insert_with(|| json!({ "checks": 0, "failed": 0, "max_residual": null }));
        e["checks"] = json!(e["checks"].as_u64().unwrap_or(0) + 1);
        if !c.pass {
            e["failed"] = json!(e["failed"].as_u64().unwrap_or(0) + 1);
        }
        if let Some(r) = c.residual {
            let cur = e["max_residual"].as_f64().unwrap_or(0.0);
            e["max_residual"] = num(cur.max(r));
        }
    }
    let list: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "module": c.module,
                "name": c.name,
                "params": c.params,
                "pass": c.pass,
                "residual": c.residual.map(num).unwrap_or(Value::Null),
            })
        })
        .collect();
    let mut values = Map::new();
    values.insert("scope".into(), Value::String(scope.into()));
    values.insert("total".into(), json!(checks.len()));
    values.insert("failed".into(), json!(failed));
    values.insert("modules".into(), Value::Object(per_module));
    values.insert("checks".into(), Value::Array(list));
    let mut tol = Map::new();
    tol.insert("spectral".into(), tolerance(SPECTRUM_TOL, "closed-form spectra against dense Jacobi results, relative"));
    tol.insert("float_sum".into(), tolerance(FLOAT_TOL, "character and Fourier sums whose exact value is known"));
    tol.insert("ci".into(), tolerance(protocols::Z99, "99% normal interval for Monte Carlo statistics"));
    Ok(CmdOutput { values, tolerances: tol, seed: Some(seed), pass: Some(failed == 0), sim: None })
}

fn gf(s: &mut Suite) -> Result<()> {
    for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
        let f = field_from_q(q)?;
        let mut ok = true;
        for a in f.elements() {
            ok &= f.add(a, f.neg(a)) == 0;
            if a != 0 {
                ok &= f.mul(a, f.inv(a)?) == 1;
            }
            for b in f.elements() {
                ok &= f.mul(a, b) == f.mul(b, a) && f.add(a, b) == f.add(b, a);
                ok &= f.phase(f.add(a, b)) == (f.phase(a) + f.phase(b)) % f.p();
            }
        }
        s.add("field_axioms_and_phase_additivity", format!("q={q}"), ok);
    }
    s.add("reject_non_prime_power", "q=6".into(), field_from_q(6).is_err());
    s.add(
        "reject_reducible_modulus",
        "q=9,mod=x^2+2x+1".into(),
        crate::parse::parse_field("9", Some("x^2+2x+1")).is_err(),
    );
    Ok(())
}

fn qcomb_checks(s: &mut Suite) -> Result<()> {
    for q in [2u32, 3] {
        let f = field_from_q(q)?;
        for n in 1..=4usize {
            for m in 1..=4usize {
                if (q as u64).pow((n * m) as u32) > 1 << 16 {
                    continue;
                }
                let mut c = vec![BigInt::zero(); n.min(m) + 1];
                for a in enumerate_all(&f, n, m, 1 << 16)? {
                    c[a.rank()] += 1;
                }
                let ok = (0..=n.min(m)).all(|r| c[r] == count_rank_matrices(n as i64, m as i64, r as i64, q as u64));
                s.add("count_rank_matrices_vs_enumeration", format!("q={q} n={n} m={m}"), ok);
            }
        }
        for n in 0..=4usize {
            let ok = (0..=n).all(|k| {
                subspaces::enumerate(&f, n, k, 1 << 20).map(|v| BigInt::from(v.len())).ok() == Some(gauss_binomial(n as i64, k as i64, q as u64))
            });
            s.add("gauss_binomial_vs_subspace_count", format!("q={q} n={n}"), ok);
        }
    }
    for q in [2u64, 3, 4] {
        for n in 1..=8i64 {
            let ok = (0..n).all(|d| {
                let mut g = vec![BigRat::zero(); d as usize + 1];
                g[d as usize] = BigRat::one();
                qcomb::cauchy_residual(n, q, &g).is_zero()
            });
            s.add("cauchy_identity_monomials", format!("q={q} n={n}"), ok);
        }
    }
    Ok(())
}

fn matq(s: &mut Suite, mut rng: RngStream) -> Result<()> {
    for q in [2u32, 3, 4, 5, 9] {
        let f = field_from_q(q)?;
        let mut ok = true;
        for _ in 0..40 {
            let n = 1 + rng.below(4) as usize;
            let a = MatQ::sample_uniform(&f, n, n, &mut rng);
            let b = MatQ::sample_uniform(&f, n, n, &mut rng);
            let (da, db) = (a.det()?, b.det()?);
            ok &= (da != 0) == (a.rank() == n);
            ok &= a.mul(&b)?.det()? == f.mul(da, db);
            ok &= a.transpose().rank() == a.rank();
            let r = rng.below(n as u64 + 1) as usize;
            let c = MatQ::sample_rank(&f, n, n + 1, r, &mut rng)?;
            ok &= c.rank() == r && c.kernel().len() == n + 1 - r;
            for v in c.kernel() {
                ok &= c.mul_vec(&v)?.iter().all(|&x| x == 0);
            }
        }
        s.add("rank_det_kernel_consistency", format!("q={q} samples=40"), ok);
    }
    Ok(())
}

fn subspace_checks(s: &mut Suite, mut rng: RngStream) -> Result<()> {
    let f = field_from_q(2)?;
    let mut ok = true;
    for _ in 0..60 {
        let m = rng.below(5) as usize;
        let l = rng.below(5) as usize;
        let a = Subspace::from_row_space(&MatQ::sample_uniform(&f, m, 6, &mut rng));
        let b = Subspace::from_row_space(&MatQ::sample_uniform(&f, l, 6, &mut rng));
        let i = a.intersect(&b)?;
        ok &= a.sum(&b)?.dim() + i.dim() == a.dim() + b.dim();
        ok &= i.is_subspace_of(&a)? && i.is_subspace_of(&b)?;
        ok &= a.orth().orth() == a && a.orth().dim() + a.dim() == 6;
    }
    s.add("dimension_formula_and_double_orthogonal", "q=2 n=6 samples=60".into(), ok);
    let mut ok = true;
    for inter in 0..=2 {
        let (a, b) = subspaces::random_pair_with_intersection(&f, 6, 2, 3, inter, &mut rng)?;
        ok &= a.dim() == 2 && b.dim() == 3 && a.intersection_dim(&b)? == inter;
    }
    s.add("random_pair_with_intersection", "q=2 n=6 m=2 l=3".into(), ok);
    let mut ok = true;
    for n in 2..=6usize {
        for m in 0..=n {
            for l in 0..=n {
                let (lo, hi) = subspaces::sum_range(n, m, l);
                for d in lo..=hi {
                    for big_d in lo..=hi {
                        let p = sum_to_intersect(n, m, l, d, big_d)?;
                        ok &= intersect_to_sum(p)? == (d, big_d);
                    }
                }
            }
        }
    }
    s.add("sum_intersect_translation_roundtrip", "n<=6".into(), ok);
    s.add_result("example_sum_3_to_intersect_1", "n=4 m=2 l=2".into(), sum_to_intersect(4, 2, 2, 3, 3).map(|p| p.r == 1));
    Ok(())
}

fn rank_witness(s: &mut Suite) -> Result<()> {
    for (n, q) in [(2usize, 2u32), (2, 3), (1, 2), (1, 3), (1, 4), (1, 5)] {
        let f = field_from_q(q)?;
        let mut worst: f64 = 0.0;
        let mut exact_ok = true;
        for a in 0..=n {
            for b in 0..=n {
                let bf = rw::gamma_brute_force(n, a, b, &f, 1 << 16)?;
                let g = rw::gamma(n as i64, a as i64, b as i64, q as u64)?;
                if q == 2 {
                    exact_ok &= bf.exact() == Some(g.clone());
                }
                let (re, im) = bf.complex();
                worst = worst.max((re - qcomb::rat_to_f64(&g)).abs()).max(im.abs());
            }
        }
        s.add("gamma_exact_vs_character_average", format!("n={n} q={q}"), exact_ok);
        s.add_residual("gamma_vs_character_average", format!("n={n} q={q}"), worst, FLOAT_TOL);
    }
    for q in [2u64, 3] {
        let mut ok = true;
        for n in 1..=5i64 {
            for a in 0..=n {
                for b in 0..=n {
                    let mut total = BigRat::zero();
                    for r in 0..=n {
                        let p = rw::p_n(n, a, b, r, q)?;
                        if r > a.min(b) || r < a + b - n {
                            ok &= p.is_zero();
                        }
                        ok &= p <= rat_int(16.into()) * qpow_rat(q, -(a - r) * (b - r));
                        total += p;
                    }
                    ok &= total.is_one();
                }
            }
        }
        s.add("p_n_distribution_support_and_tail", format!("q={q} n<=5"), ok);
    }
    for q in [2u64, 3] {
        let mut ok = true;
        for n in 1..=4i64 {
            for a in 0..=n {
                let nodes: Vec<BigRat> = (0..=n).map(|t| qpow_rat(q, -t)).collect();
                let vals = (0..=n).map(|t| rw::gamma(n, a, t, q)).collect::<Result<Vec<_>>>()?;
                ok &= qcomb::interpolation_degree(&nodes, &vals).map_or(false, |d| d as i64 <= a);
            }
        }
        s.add("gamma_polynomial_degree_in_q_minus_t", format!("q={q} n<=4"), ok);
    }
    let mut ok = true;
    for q in [2u64, 3] {
        for n in 2..=8i64 {
            for k in 1..n {
                for l in 0..=k {
                    for m in 0..=(k - l) {
                        ok &= rw::phi_properties(&rw::phi_build(n, k, l, m, q)?)?.all_hold();
                    }
                }
            }
        }
    }
    s.add("phi_five_properties", "q in {2,3} n<=8".into(), ok);
    let f = field_from_q(2)?;
    let phi = rw::phi_build(2, 1, 0, 0, 2)?;
    let closed = rw::e_phi_spectrum(2, 2, &phi.values)?;
    let numeric = rw::e_phi_spectrum_numeric(2, &f, &phi.values, SPECTRUM_TOL)?;
    s.add_residual(
        "e_phi_closed_form_vs_svd",
        "n=2 q=2 phi=(1/2,-3/2,1)".into(),
        closed.max_relative_residual(&numeric, 1 << 16).unwrap_or(f64::INFINITY),
        SPECTRUM_TOL,
    );
    let dense = rw::e_phi_matrix(2, &f, &phi.values)?;
    s.add(
        "e_phi_frobenius_and_l1",
        "n=2 q=2".into(),
        closed.frobenius_sq_exact() == Some(dense.frobenius_sq()) && dense.l1() == phi.l1() && dense.class_sums() == phi.values,
    );
    let f3 = field_from_q(3)?;
    let phi3 = vec![BigRat::new(1.into(), 3.into()), BigRat::new((-1).into(), 2.into())];
    let c3 = rw::e_phi_spectrum(1, 3, &phi3)?;
    let n3 = rw::e_phi_spectrum_numeric(1, &f3, &phi3, SPECTRUM_TOL)?;
    s.add_residual("e_phi_closed_form_vs_svd", "n=1 q=3".into(), c3.max_relative_residual(&n3, 1 << 16).unwrap_or(f64::INFINITY), SPECTRUM_TOL);
    let mut ok = true;
    let mut prev = 0.0;
    for k in 0..=120 {
        let b = rw::canonical_rank_bound(k, 2)?;
        ok &= b.bits >= prev && (b.eps - (0.5 - 0.25 * 2f64.powf(-(k as f64) / 3.0))).abs() < 1e-15;
        prev = b.bits;
    }
    s.add("canonical_bound_eps_and_monotone", "q=2 k<=120".into(), ok);
    Ok(())
}

fn fourier(s: &mut Suite, mut rng: RngStream) -> Result<()> {
    for (n, q) in [(1usize, 5u32), (2, 2), (2, 3), (1, 9)] {
        let f = field_from_q(q)?;
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let v = MatrixFunction::tabulate(n, &f, |_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))?;
            worst = worst.max(fourier_det::parseval_residual(&v)?).max(fourier_det::roundtrip_residual(&v)?);
        }
        s.add_residual("parseval_and_inverse", format!("n={n} q={q} functions=50"), worst, FLOAT_TOL);
        s.add_residual("h_unitary", format!("n={n} q={q}"), fourier_det::h_unitarity_residual(n, &f)?, FLOAT_TOL);
    }
    let f = field_from_q(3)?;
    let g = fourier_det::g_uv_spectrum(2, &f, 1, 2)?;
    s.add_residual("g_uv_vanishes_on_singular", "n=2 q=3".into(), g.singular_max, FLOAT_TOL);
    s.add_residual("g_uv_constant_on_det_classes", "n=2 q=3".into(), g.class_spread, FLOAT_TOL);
    s.add("g_uv_sup_bound", "n=2 q=3".into(), g.sup_norm <= g.sup_bound + FLOAT_TOL && g.singular_count == 33);
    s.add("g_u_l1_is_one", "n=2 q=3".into(), fourier_det::det_witness(2, &f, 1)?.l1().is_one());
    let pn = fourier_det::pair_norms(2, &f, 1, 2)?;
    s.add("pair_spectral_bound", "n=2 q=3".into(), pn.spectral <= 24f64.powf(-1.5) + SPECTRUM_TOL);
    s.add_residual("pair_spectral_fourier_vs_dense", "n=2 q=3".into(), (pn.spectral - fourier_det::pair_spectral_dense(2, &f, 1, 2)?).abs(), SPECTRUM_TOL);
    let w = fourier_det::rankdet_witness(2, &f, 1, 1, 0, 0)?;
    s.add("rankdet_three_case_formula", "n=2 q=3 k=1 a=1".into(), w.mismatches == 0 && fourier_det::rankdet_dense_mismatches(&w, &f)? == 0);
    s.add("rankdet_l1_and_spectral", "n=2 q=3 k=1 a=1".into(), w.l1 == w.phi.l1() && w.spectral <= w.spectral_bound + SPECTRUM_TOL);
    for (n, q) in [(2usize, 2u32), (2, 3), (1, 5)] {
        let f = field_from_q(q)?;
        let mut worst: f64 = 0.0;
        let mut exact_ok = true;
        for r in 0..=n {
            let c = fourier_det::nonsingularity_trace_check(n, &f, r)?;
            worst = worst.max(c.residual);
            if q == 2 {
                exact_ok &= c.exact.as_ref() == Some(&c.expected);
            }
        }
        s.add_residual("nonsingular_diagonal_character", format!("n={n} q={q}"), worst, FLOAT_TOL);
        s.add("nonsingular_diagonal_character_exact", format!("n={n} q={q}"), exact_ok);
    }
    Ok(())
}

fn subspace_witness(s: &mut Suite) -> Result<()> {
    let mut ok = true;
    for q in [2u64, 3] {
        for n in 0..=6i64 {
            for m in 0..=n {
                for l in 0..=n {
                    let t = sw::LambdaTable::new(n, m, l, q)?;
                    ok &= t.row_sum_total() == gauss_binomial(n, l, q);
                    if m + l <= n {
                        ok &= t.normalization_holds();
                    }
                }
            }
        }
    }
    s.add("lambda_row_sums_and_normalization", "q in {2,3} n<=6".into(), ok);
    let f = field_from_q(2)?;
    let ind0 = sw::indicator(2, 0);
    let e = sw::j_eigen(4, 2, 2, &ind0)?;
    let want: Vec<(i64, u64)> = vec![(16, 1), (2, 20), (-4, 14)];
    let got: Vec<(f64, BigInt)> = e.entries.iter().map(|x| (x.value, x.multiplicity.clone())).collect();
    s.add(
        "j0_422_eigenvalues",
        "n=4 m=2 l=2 q=2".into(),
        got.len() == 3 && got.iter().zip(&want).all(|((v, m), (wv, wm))| (*v - *wv as f64).abs() < 1e-12 && *m == BigInt::from(*wm)),
    );
    let j1 = sw::j_singular(3, 1, 2, 2, &sw::indicator(1, 1), false)?;
    s.add("j1_312_frobenius", "n=3 m=1 l=2 q=2".into(), j1.frobenius_sq_exact() == Some(BigRat::from_integer(21.into())));
    let mut worst: f64 = 0.0;
    for n in 1..=4i64 {
        for m in 0..=n {
            for l in 0..=n {
                for r in 0..=m.min(l) {
                    let phi = sw::indicator(m.min(l), r);
                    let closed = sw::j_singular(n, m, l, 2, &phi, false)?;
                    let numeric = sw::j_singular_numeric(&f, n, m, l, &phi, false, SPECTRUM_TOL)?;
                    worst = worst.max(closed.max_relative_residual(&numeric, 1 << 20).unwrap_or(f64::INFINITY));
                    if m == l {
                        let ce = sw::j_eigen(n, m, 2, &phi)?;
                        let ne = sw::j_eigen_numeric(&f, n, m, &phi, SPECTRUM_TOL)?;
                        worst = worst.max(ce.max_relative_residual(&ne, 1 << 20).unwrap_or(f64::INFINITY));
                    }
                }
            }
        }
    }
    s.add_residual("j_closed_form_vs_dense", "q=2 n<=4 all (m,l,r)".into(), worst, SPECTRUM_TOL);
    let mut ok = true;
    for q in [2u64, 3] {
        for delta in 1..=8i64 {
            for big_r in 1..=delta {
                for d1 in 0..=(delta - big_r) {
                    for d2 in 0..=(delta - big_r - d1) {
                        ok &= sw::psi_properties(&sw::psi_build(delta, big_r, d1, d2, q)?)?.all_hold();
                    }
                }
            }
        }
    }
    s.add("psi_five_properties", "q in {2,3} Delta<=8".into(), ok);
    let mut ok = true;
    for n in 2..=8i64 {
        for m in 1..=n {
            for l in 1..=(n - m) {
                for big_r in 1..=m.min(l) {
                    let b = sw::intersect_trace_norm_lb(n, m, l, big_r, 2, 0.0, 0, 0)?;
                    ok &= b.dominates_published();
                }
            }
        }
    }
    s.add("intersect_trace_bound_dominates_closed_forms", "q=2 m+l<=n<=8 d1=d2=0 delta=0".into(), ok);
    Ok(())
}

fn protocol_checks(s: &mut Suite, seed: u64) -> Result<()> {
    let f2 = field_from_q(2)?;
    let mut rng = RngStream::new(seed);
    let mut ok = true;
    for rank in 0..=2 {
        let (a, b) = protocols::rank_instance(&f2, 2, 2, rank, &mut rng)?;
        ok &= protocols::two_bit_exhaustive(&a, &b)? == protocols::two_bit_expectation(2, rank as i64);
    }
    s.add("two_bit_exhaustive_expectation", "q=2 n=2".into(), ok);
    let f3 = field_from_q(3)?;
    let mut ok = true;
    for i in 0..50 {
        let n = 4 + (i % 4);
        let h = n / 2;
        let rank = rng.below(h as u64 + 1) as usize;
        let (a, b) = protocols::rank_instance(&f3, h, h, rank, &mut rng)?;
        ok &= protocols::block_matrix(&a, &b, n)?.rank() == a.add(&b)?.rank() + (n - h);
    }
    s.add("block_matrix_rank_identity", "q=3 instances=50".into(), ok);
    let mut ok = true;
    let (a, b) = protocols::rank_instance(&f2, 3, 3, 1, &mut rng)?;
    for k in 1..=3usize {
        let mut alg = protocols::StreamingRank::new(&f2, 6, 6, 4, 0.25, &mut rng.clone())?;
        let sbits = protocols::StreamingAlgorithm::memory_bits(&alg);
        let tr = protocols::streaming_to_protocol(&mut alg, &a, &b, 6, k, &rng)?;
        ok &= tr.bits_written == sbits * (2 * k as u64 - 1) + 1;
    }
    s.add("streaming_handoff_cost", "n=6 passes 1..3".into(), ok);
    let runs = [
        ("rank_sketch", protocols::simulate_rank_sketch(&f2, 6, 6, 2, 3, 2, 0.25, 400, seed)?),
        ("two_bit", protocols::simulate_two_bit(&f3, 3, 3, 1, 2000, seed)?),
        ("intersect_small", protocols::simulate_intersect_small(&f2, 6, 3, 3, 2, 1.0 / 3.0, 300, seed)?),
        ("intersect_large_two_bit", protocols::simulate_intersect_large(&f2, 6, 3, 3, 2, LargeErrorVariant::TwoBit, 300, seed)?),
        ("intersect_large_masked", protocols::simulate_intersect_large(&f2, 6, 3, 3, 2, LargeErrorVariant::Masked(1), 300, seed)?),
        ("streaming", protocols::simulate_streaming(&f2, 6, 4, 0.25, 2, 200, seed)?),
        ("blq", protocols::simulate_blq(&f2, 5, 5, 2, 0.25, 300, seed)?),
        ("symmetrize", protocols::simulate_symmetrize(&f2, 4, 4, 1, 3, 0.25, 300, seed)?),
    ];
    for (name, r) in runs {
        s.add(&format!("simulate_{name}"), format!("seed={seed} trials={}", r.trials), r.pass());
    }
    Ok(())
}
