//! One function per command. Each reads its flags through [`Ctx`] first,
//! then computes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rankcc_core::fourier_det::{self, FOURIER_CAP};
use rankcc_core::matq::{enumerate_all, matrix_space_size};
use rankcc_core::protocols::{self, LargeErrorVariant, SimReport};
use rankcc_core::qcomb::{count_rank_matrices, gauss_binomial, qpow, rat_to_f64};
use rankcc_core::rank_witness::{self as rw, CanonicalCase};
use rankcc_core::subspace_witness as sw;
use rankcc_core::subspaces::{sum_to_intersect, IntersectParams};
use rankcc_core::{BigRat, Error, Field, Result};
use serde_json::{json, Map, Value};

use crate::ctx::{as_q, Ctx};
use crate::parse::{format_matrix, format_rational, parse_matrix, positive_at_most};
use crate::report::{big, num, rat, rats, sim_report, spectrum};
use crate::{tolerance, CmdOutput};

/// Relative residual allowed between closed-form and numeric spectra.
pub const SPECTRUM_TOL: f64 = 1e-9;

pub fn dispatch(path: &[String], scope: Option<&str>, ctx: &mut Ctx) -> Result<CmdOutput> {
    let p: Vec<&str> = path.iter().map(String::as_str).collect();
    match p.as_slice() {
        ["gamma"] => gamma(ctx),
        ["pn"] => pn(ctx),
        ["qbinom"] => qbinom(ctx),
        ["count-rank"] => count_rank(ctx),
        ["lambda"] => lambda(ctx),
        ["matrix"] => matrix(ctx),
        ["witness", "rank"] => witness_rank(ctx),
        ["witness", "det"] => witness_det(ctx),
        ["witness", "rankdet"] => witness_rankdet(ctx),
        ["witness", "subspace"] => witness_subspace(ctx),
        ["spectrum", "e-phi"] => spectrum_e_phi(ctx),
        ["spectrum", "j"] => spectrum_j(ctx),
        ["bound", "rank"] => bound_rank(ctx),
        ["bound", "det"] => bound_det(ctx),
        ["bound", "rankdet"] => bound_rankdet(ctx),
        ["bound", "intersect"] => bound_intersect(ctx),
        ["bound", "sum"] => bound_sum(ctx),
        ["simulate", which] => simulate(which, ctx),
        ["verify"] => crate::verify::command(scope.unwrap_or("all"), ctx),
        _ => Err(Error::Internal(format!("unknown command {}", path.join(" ")))),
    }
}

fn out(values: Map<String, Value>) -> CmdOutput {
    CmdOutput { values, ..Default::default() }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn positive(name: &str, v: i64) -> Result<i64> {
    if v < 1 {
        return Err(Error::Precondition(format!("{name} >= 1")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Tables.

fn gamma(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)?;
    let q = as_q(&f);
    let table = rw::gamma_table(n, q)?;
    let full = (0..=n).map(|r| rw::gamma_full(n, r, q)).collect::<Result<Vec<_>>>()?;
    Ok(out(obj(json!({
        "gamma": table.iter().map(|row| rats(row)).collect::<Vec<_>>(),
        "gamma_full": rats(&full),
        "index": "gamma[s][t] = Gamma_n(s,t); gamma_full[r] = Gamma_n(n,r)",
    }))))
}

fn pn(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)?;
    let s = ctx.opt_int("s")?;
    let t = ctx.opt_int("t")?;
    let q = as_q(&f);
    let ss: Vec<i64> = s.map(|v| vec![v]).unwrap_or_else(|| (0..=n).collect());
    let ts: Vec<i64> = t.map(|v| vec![v]).unwrap_or_else(|| (0..=n).collect());
    let mut m = Map::new();
    for &s in &ss {
        for &t in &ts {
            let row = (0..=n).map(|r| rw::p_n(n, s, t, r, q)).collect::<Result<Vec<_>>>()?;
            m.insert(format!("{s},{t}"), rats(&row));
        }
    }
    Ok(out(obj(json!({ "p": m, "index": "p[\"s,t\"][r] = P_n(s,t,r)" }))))
}

fn qbinom(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.nonneg("n", None)? as i64;
    if ctx.has("k") && ctx.has("m") {
        return Err(Error::Precondition("give one of --k and --m".into()));
    }
    let m = if ctx.has("m") { ctx.opt_int("m")? } else { ctx.opt_int("k")? };
    let q = as_q(&f);
    let mut v = Map::new();
    match m {
        Some(m) => {
            v.insert("value".into(), big(&gauss_binomial(n, m, q)));
        }
        None => {
            v.insert("row".into(), Value::Array((0..=n).map(|m| big(&gauss_binomial(n, m, q))).collect()));
        }
    }
    Ok(out(v))
}

fn count_rank(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.nonneg("n", None)?;
    let m = ctx.nonneg("m", Some(n as i64))?;
    let r = ctx.opt_int("r")?;
    let cap = ctx.cap(1 << 16)?;
    let q = as_q(&f);
    let counts: Vec<BigInt> = (0..=n.min(m)).map(|r| count_rank_matrices(n as i64, m as i64, r as i64, q)).collect();
    let total = counts.iter().fold(BigInt::zero(), |a, b| a + b);
    let mut v = Map::new();
    match r {
        Some(r) => {
            v.insert("value".into(), big(&count_rank_matrices(n as i64, m as i64, r, q)));
        }
        None => {
            v.insert("counts".into(), Value::Array(counts.iter().map(big).collect()));
        }
    }
    v.insert("sum_equals_q_nm".into(), Value::Bool(total == qpow(q, (n * m) as u64)));
    if matrix_space_size(&f, n, m, cap).is_ok() {
        let mut bf = vec![BigInt::zero(); n.min(m) + 1];
        for a in enumerate_all(&f, n, m, cap)? {
            bf[a.rank()] += 1;
        }
        v.insert("enumeration_agrees".into(), Value::Bool(bf == counts));
    } else {
        v.insert("enumeration_agrees".into(), Value::Null);
    }
    Ok(out(v))
}

fn lambda(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.int("n", None)?;
    let m = ctx.int("m", None)?;
    let l = ctx.int("l", Some(m))?;
    let r = ctx.opt_int("r")?;
    let k = ctx.opt_int("k")?;
    let q = as_q(&f);
    let mut v = Map::new();
    if let (Some(r), Some(k)) = (r, k) {
        v.insert("lambda".into(), big(&sw::lambda(n, m, l, r, k, q)?));
        if m + l <= n {
            v.insert("lambda_bar".into(), rat(&sw::lambda_bar(n, m, l, r, k, q)?));
        }
        return Ok(out(v));
    }
    if r.is_some() || k.is_some() {
        return Err(Error::Precondition("--r and --k must be given together".into()));
    }
    let t = sw::LambdaTable::new(n, m, l, q)?;
    v.insert("lambda".into(), Value::Array(t.lambda.iter().map(|row| Value::Array(row.iter().map(big).collect())).collect()));
    v.insert(
        "lambda_bar".into(),
        t.lambda_bar.as_ref().map(|tb| Value::Array(tb.iter().map(|row| rats(row)).collect())).unwrap_or(Value::Null),
    );
    v.insert("row_sum_total".into(), big(&t.row_sum_total()));
    v.insert("normalization_holds".into(), Value::Bool(t.normalization_holds()));
    v.insert("index".into(), Value::String("lambda[r][k]".into()));
    Ok(out(v))
}

fn matrix(ctx: &mut Ctx) -> Result<CmdOutput> {
    let m = parse_matrix(&ctx_raw_matrix(ctx)?)?;
    let d = m.decompose();
    Ok(out(obj(json!({
        "matrix": format_matrix(&m),
        "field": m.field().designation(),
        "rank": d.rank,
        "det": d.det,
        "rref": format_matrix(&d.rref),
        "kernel_basis": d.kernel_basis,
    }))))
}

fn ctx_raw_matrix(ctx: &mut Ctx) -> Result<String> {
    let s = ctx.text("matrix")?;
    let m = parse_matrix(&s)?;
    ctx.canonical.insert("matrix".into(), format_matrix(&m));
    Ok(s)
}

// ---------------------------------------------------------------------------
// Witnesses.

fn side(q: u64, n: i64) -> BigInt {
    qpow(q, (n * n) as u64)
}

fn witness_rank(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.int("n", None)?;
    let k = ctx.int("k", None)?;
    let l = ctx.int("l", Some(k))?;
    let m = ctx.int("m", Some(0))?;
    let delta = ctx.rational("delta", Some("0"))?;
    let q = as_q(&f);
    let b = rw::rank_trace_norm_lb(n, k, q, &delta, l, m)?;
    let props = rw::phi_properties(&b.phi)?;
    let s = side(q, n);
    let cert = b.certified();
    let mut v = obj(json!({
        "phi": rats(&b.phi.values),
        "phi_l1": rat(&b.phi_l1),
        "properties": {
            "all_hold": props.all_hold(),
            "top_is_one": props.top_is_one,
            "at_k_negative": props.at_k_negative,
            "support_ok": props.support_ok,
            "orthogonality_residuals": rats(&props.orthogonality_residuals),
            "tail": rat(&props.tail),
            "tail_bound": rat(&props.tail_bound),
        },
        "correlation": rat(&b.correlation),
        "tail": rat(&b.tail),
        "spectral_norm": rat(&b.spectral_norm),
        "trace_lb_exact": rat(&b.exact),
        "trace_lb_certified": rat(&cert),
        "trace_lb_alt": rat(&b.exact_alt),
        "published_main": num(b.published_main),
        "published_alt": num(b.published_alt),
        "dominates_published": b.dominates_published(),
        "qcc_bits": num(rw::qcc_lower_bound(&cert, &s, &s)),
    }));
    v.insert("spectral_norm_f64".into(), num(rat_to_f64(&b.spectral_norm)));
    Ok(out(v))
}

fn elem(ctx: &mut Ctx, f: &Field, name: &str, default: Option<i64>) -> Result<u32> {
    let v = ctx.int(name, default)?;
    if v < 0 || v >= f.q() as i64 {
        return Err(Error::Precondition(format!("0 <= {name} < q = {}", f.q())));
    }
    Ok(v as u32)
}

fn complex(c: &num_complex::Complex64) -> Value {
    json!([num(c.re), num(c.im)])
}

fn witness_det(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)? as usize;
    let u = elem(ctx, &f, "u", Some(1))?;
    let v = elem(ctx, &f, "v", Some(if f.q() > 2 { 2 } else { 0 }))?;
    let gamma = ctx.rational("gamma", Some("1"))?;
    let g = positive_at_most(&gamma, &BigRat::one(), "gamma")?;
    if u == 0 || v == 0 {
        return Err(Error::Precondition("u != 0 and v != 0".into()));
    }
    let spec = fourier_det::g_uv_spectrum(n, &f, u, v)?;
    let by_det: Map<String, Value> = spec.by_det.iter().map(|(d, c)| (d.to_string(), complex(c))).collect();
    let mut vals = obj(json!({
        "g_uv": {
            "by_det": by_det,
            "singular_max": num(spec.singular_max),
            "class_spread": num(spec.class_spread),
            "sup_norm": num(spec.sup_norm),
            "sup_bound": num(spec.sup_bound),
            "sl_size": big(&spec.sl_size),
            "singular_count": spec.singular_count,
        },
        "g_u_l1": rat(&fourier_det::det_witness(n, &f, u)?.l1()),
    }));
    if u != v {
        let pn = fourier_det::pair_norms(n, &f, u, v)?;
        vals.insert(
            "pair".into(),
            json!({ "l1": rat(&pn.l1), "spectral": num(pn.spectral), "bound_sl": num(pn.bound_sl), "bound_q": num(pn.bound_q) }),
        );
        let c = fourier_det::det_witness_chain(n, &f, u, v, g)?;
        vals.insert(
            "chain".into(),
            json!({
                "trace_lb": num(c.trace_lb),
                "trace_lb_published": num(c.trace_lb_published),
                "witness_bits": num(c.witness_bits),
                "formula_bits": num(c.formula_bits),
            }),
        );
    }
    let mut o = out(vals);
    o.tolerances.insert("zero_residual".into(), tolerance(1e-10, "floating Fourier sums; exact values are 0"));
    Ok(o)
}

fn witness_rankdet(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)? as usize;
    let k = ctx.int("k", None)?;
    let a = elem(ctx, &f, "a", Some(1))?;
    let l = ctx.int("l", Some(k))?;
    let m = ctx.int("m", Some(0))?;
    let delta = ctx.rational("delta", Some("0"))?;
    if a == 0 {
        return Err(Error::Precondition("a != 0".into()));
    }
    let w = fourier_det::rankdet_witness(n, &f, k, a, l, m)?;
    let dense_mismatches = fourier_det::rankdet_dense_mismatches(&w, &f)?;
    let tl = w.trace_lb(rat_to_f64(&delta));
    let s = side(as_q(&f), n as i64);
    let mut o = out(obj(json!({
        "phi": rats(&w.phi.values),
        "mismatches": w.mismatches,
        "dense_mismatches": dense_mismatches,
        "l1": rat(&w.l1),
        "phi_l1": rat(&w.phi.l1()),
        "correlation": rat(&w.correlation),
        "off_domain": rat(&w.off_domain),
        "spectral": num(w.spectral),
        "spectral_bound": num(w.spectral_bound),
        "trace_lb": num(tl),
        "qcc_bits": num(rw::qcc_lower_bound_f64(tl, &s, &s)),
    })));
    o.tolerances.insert("spectral_slack".into(), tolerance(1e-9, "spectral norm against its closed-form bound"));
    Ok(o)
}

fn witness_subspace(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.int("n", None)?;
    let m = ctx.int("m", None)?;
    let l = ctx.int("l", Some(m))?;
    let big_r = ctx.int("R", None)?;
    let d1 = ctx.int("d1", Some(0))?;
    let d2 = ctx.int("d2", Some(0))?;
    let delta = ctx.rational("delta", Some("0"))?;
    let q = as_q(&f);
    let b = sw::intersect_trace_norm_lb(n, m, l, big_r, q, rat_to_f64(&delta), d1, d2)?;
    let props = sw::psi_properties(&b.psi)?;
    Ok(out(obj(json!({
        "psi": rats(&b.psi.values),
        "psi_l1": rat(&b.psi_l1),
        "properties_hold": props.all_hold(),
        "orthogonality_residuals": rats(&props.orthogonality_residuals),
        "tail": rat(&props.tail),
        "tail_bound": rat(&props.tail_bound),
        "correlation": rat(&b.correlation),
        "off_support": rat(&b.off_support),
        "spectral_sq": rat(&b.spectral_sq),
        "trace_lb_exact": num(b.exact),
        "trace_lb_certified": num(b.certified()),
        "trace_lb_alt": num(b.exact_alt),
        "published_main": num(b.published_main),
        "published_alt": num(b.published_alt),
        "dominates_published": b.dominates_published(),
    }))))
}

// ---------------------------------------------------------------------------
// Spectra.

fn spectrum_e_phi(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)?;
    let q = as_q(&f);
    let phi = if ctx.has("phi") {
        ctx.phi("")?.values(n as usize)?
    } else {
        let k = ctx.int("k", None)?;
        let l = ctx.int("l", Some(k))?;
        let m = ctx.int("m", Some(0))?;
        rw::phi_build(n, k, l, m, q)?.values
    };
    let cap = ctx.cap(rw::E_PHI_DENSE_CAP as u64)?;
    let closed = rw::e_phi_spectrum(n, q, &phi)?;
    let mut v = Map::new();
    v.insert("phi".into(), rats(&phi));
    v.insert("closed_form".into(), spectrum(&closed));
    v.insert("frobenius_sq".into(), closed.frobenius_sq_exact().map(|x| rat(&x)).unwrap_or(Value::Null));
    v.insert("spectral_norm".into(), rat(&rw::e_phi_spectral_norm(n, q, &phi)?));
    if matrix_space_size(&f, n as usize, n as usize, cap).is_ok() {
        let numeric = rw::e_phi_spectrum_numeric(n as usize, &f, &phi, SPECTRUM_TOL)?;
        let res = closed.max_relative_residual(&numeric, 1 << 20);
        let dense = rw::e_phi_matrix(n as usize, &f, &phi)?;
        v.insert("numeric".into(), spectrum(&numeric));
        v.insert("max_relative_residual".into(), res.map(num).unwrap_or(Value::Null));
        v.insert("dense_frobenius_sq".into(), rat(&dense.frobenius_sq()));
        v.insert("dense_l1".into(), rat(&dense.l1()));
        v.insert("class_sums".into(), rats(&dense.class_sums()));
    }
    let mut o = out(v);
    o.tolerances.insert("relative_residual".into(), tolerance(SPECTRUM_TOL, "closed form against Jacobi SVD, relative to the largest value"));
    Ok(o)
}

fn spectrum_j(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.int("n", None)?;
    let m = ctx.int("m", None)?;
    let l = ctx.int("l", Some(m))?;
    let phi_spec = ctx.phi("indicator:0")?;
    let variant = ctx.string("variant", "raw", &["raw", "normalized"])?;
    let cap = ctx.cap(4000)?;
    let q = as_q(&f);
    if !(0 <= m && 0 <= l && m.max(l) <= n) {
        return Err(Error::Precondition("0 <= m, l <= n".into()));
    }
    let phi = phi_spec.values(m.min(l) as usize)?;
    let normalized = variant == "normalized";
    let mut v = Map::new();
    v.insert("phi".into(), rats(&phi));
    let singular = sw::j_singular(n, m, l, q, &phi, normalized)?;
    v.insert("singular".into(), spectrum(&singular));
    let eigen = if m == l && !normalized { Some(sw::j_eigen(n, m, q, &phi)?) } else { None };
    if let Some(e) = &eigen {
        v.insert("eigen".into(), spectrum(e));
        v.insert("trace".into(), {
            let t = e.entries.iter().fold(BigRat::zero(), |acc, x| match &x.exact {
                Some(rankcc_core::spectrum::ExactValue::Rational(r)) => acc + r * BigRat::from_integer(x.multiplicity.clone()),
                _ => acc,
            });
            rat(&t)
        });
        v.insert("frobenius_sq".into(), e.frobenius_sq_exact().map(|x| rat(&x)).unwrap_or(Value::Null));
    } else {
        v.insert("frobenius_sq".into(), singular.frobenius_sq_exact().map(|x| rat(&x)).unwrap_or(Value::Null));
    }
    let rows = gauss_binomial(n, m, q);
    let cols = gauss_binomial(n, l, q);
    if rows.clone() * &cols <= BigInt::from(cap) {
        let ns = sw::j_singular_numeric(&f, n, m, l, &phi, normalized, SPECTRUM_TOL)?;
        let mut res = singular.max_relative_residual(&ns, 1 << 20).unwrap_or(f64::NAN);
        v.insert("numeric_singular".into(), spectrum(&ns));
        if let Some(e) = &eigen {
            let ne = sw::j_eigen_numeric(&f, n, m, &phi, SPECTRUM_TOL)?;
            res = res.max(e.max_relative_residual(&ne, 1 << 20).unwrap_or(f64::NAN));
            v.insert("numeric_eigen".into(), spectrum(&ne));
        }
        v.insert("max_relative_residual".into(), num(res));
    }
    let mut o = out(v);
    o.tolerances.insert("relative_residual".into(), tolerance(SPECTRUM_TOL, "closed form against dense Jacobi eigen/SVD, relative to the largest value"));
    Ok(o)
}

// ---------------------------------------------------------------------------
// Bounds.

fn case_name(c: CanonicalCase) -> &'static str {
    match c {
        CanonicalCase::Trivial => "trivial",
        CanonicalCase::Small => "k<=50",
        CanonicalCase::Large => "k>50",
    }
}

fn canonical_json(b: &rw::CanonicalBound) -> Value {
    json!({
        "eps": num(b.eps),
        "case": case_name(b.case),
        "case_bits": num(b.case_bits),
        "bits": num(b.bits),
        "witness_l": b.l,
        "witness_m": b.m,
    })
}

/// Any protocol needs one bit, so both sides are compared after clamping at 1.
fn clamped_dominates(published: f64, witness: f64) -> bool {
    published <= witness.max(1.0) + 1e-9
}

fn bound_rank(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let k = ctx.nonneg("k", None)? as i64;
    let n = ctx.opt_int("n")?;
    let q = as_q(&f);
    let b = rw::canonical_rank_bound(k, q)?;
    let mut v = obj(json!({ "formula": canonical_json(&b) }));
    if let Some(n) = n {
        if !(n > k && k >= 1) {
            return Err(Error::Precondition("n > k >= 1".into()));
        }
        let w = rw::canonical_witness_bits(n, k, q)?;
        v.insert("witness_bits".into(), num(w));
        v.insert("dominates".into(), Value::Bool(clamped_dominates(b.bits, w)));
    }
    Ok(out(v))
}

fn bound_det(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)?;
    let gamma = ctx.rational("gamma", Some("1"))?;
    let a = elem(ctx, &f, "a", Some(1))?;
    let b = elem(ctx, &f, "b", Some(if f.q() > 2 { 2 } else { 0 }))?;
    let cap = ctx.cap(FOURIER_CAP as u64)?;
    let g = positive_at_most(&gamma, &BigRat::one(), "gamma")?;
    let q = as_q(&f);
    let formula = fourier_det::det_cc_bound(n, q, g)?;
    let mut v = obj(json!({ "formula_bits": num(formula), "gamma": rat(&gamma) }));
    if n >= 2 && a != b {
        let (cb, bits) = fourier_det::det_intro_bits(n, q, a, b)?;
        v.insert("pair_bound".into(), json!({ "case_bits": num(cb), "bits": num(bits) }));
    }
    if a != 0 && b != 0 && a != b && matrix_space_size(&f, n as usize, n as usize, cap).is_ok() {
        let c = fourier_det::det_witness_chain(n as usize, &f, a, b, g)?;
        v.insert("witness_bits".into(), num(c.witness_bits));
        v.insert("trace_lb".into(), num(c.trace_lb));
        v.insert("trace_lb_published".into(), num(c.trace_lb_published));
        v.insert("dominates".into(), Value::Bool(clamped_dominates(formula.max(1.0), c.witness_bits)));
    }
    Ok(out(v))
}

fn bound_rankdet(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = positive("n", ctx.int("n", None)?)?;
    let r = ctx.int("r", None)?;
    let a = elem(ctx, &f, "a", Some(1))?;
    let cap = ctx.cap(FOURIER_CAP as u64)?;
    let q = as_q(&f);
    if !(0 <= r && r < n) || a == 0 {
        return Err(Error::Precondition("0 <= r < n and a != 0".into()));
    }
    let b = rw::canonical_rank_bound(r, q)?;
    let mut v = obj(json!({ "formula": canonical_json(&b) }));
    if r >= 1 && matrix_space_size(&f, n as usize, n as usize, cap).is_ok() {
        let w = fourier_det::rankdet_witness(n as usize, &f, r, a, b.l, b.m)?;
        let tl = w.trace_lb(2.0 * b.eps);
        let s = side(q, n);
        let bits = if tl > 0.0 { rw::qcc_bits_unclamped_log2(tl.log2(), &s, &s) } else { f64::NEG_INFINITY };
        v.insert("witness_trace_lb".into(), num(tl));
        v.insert("witness_bits".into(), num(bits));
        v.insert("dominates".into(), Value::Bool(clamped_dominates(b.bits, bits)));
    }
    Ok(out(v))
}

fn intersect_json(n: i64, m: i64, l: i64, r: i64, big_r: i64, gamma: &BigRat, c: &BigRat, q: u64) -> Result<Map<String, Value>> {
    let g = positive_at_most(gamma, &BigRat::one(), "gamma")?;
    let b = sw::intersect_cc_lower_bound(n, m, l, r, big_r, g, q, rat_to_f64(c))?;
    let red = b.reduced;
    let mut v = obj(json!({
        "reduced": { "n": red.n, "m": red.m, "l": red.l, "r": red.r, "R": red.big_r },
        "gamma_min": num(sw::intersect_gamma_min(m, l, big_r, q)),
        "c": rat(c),
        "factors": [num(b.factors.0), num(b.factors.1)],
        "trivial": b.trivial,
        "formula_bits": num(b.formula_bits),
        "bits": num(b.bits),
    }));
    if !b.trivial {
        let w = sw::intersect_witness_bits(red, q, g)?;
        v.insert("witness_bits".into(), num(w));
        v.insert("dominates".into(), Value::Bool(clamped_dominates(b.bits, w)));
    }
    Ok(v)
}

fn bound_intersect(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.int("n", None)?;
    let m = ctx.int("m", None)?;
    let l = ctx.int("l", Some(m))?;
    let r = ctx.int("r", None)?;
    let big_r = ctx.int("R", None)?;
    let gamma = ctx.rational("gamma", None)?;
    let c = ctx.rational("c", Some(&format_rational(&default_c())))?;
    Ok(out(intersect_json(n, m, l, r, big_r, &gamma, &c, as_q(&f))?))
}

fn default_c() -> BigRat {
    BigRat::new(1.into(), 960.into())
}

fn bound_sum(ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(None)?;
    let n = ctx.nonneg("n", None)?;
    let m = ctx.nonneg("m", None)?;
    let l = ctx.nonneg("l", Some(m as i64))?;
    let d = ctx.nonneg("d", None)?;
    let big_d = ctx.nonneg("D", None)?;
    let gamma = ctx.rational("gamma", None)?;
    let c = ctx.rational("c", Some(&format_rational(&default_c())))?;
    let p: IntersectParams = sum_to_intersect(n, m, l, d, big_d)?;
    let (r, big_r) = (p.r, p.big_r);
    let mut v = intersect_json(n as i64, m as i64, l as i64, r as i64, big_r as i64, &gamma, &c, as_q(&f))?;
    v.insert("intersect_params".into(), json!({ "r": r, "R": big_r }));
    Ok(out(v))
}

// ---------------------------------------------------------------------------
// Simulations.

fn eps_flag(ctx: &mut Ctx, default: &str, hi: &str) -> Result<f64> {
    let e = ctx.rational("eps", Some(default))?;
    positive_at_most(&e, &crate::parse::parse_rational(hi)?, "eps")
}

fn simulate(which: &str, ctx: &mut Ctx) -> Result<CmdOutput> {
    let f = ctx.field(Some(2))?;
    let seed = ctx.u64("seed", 1)?;
    let rep: SimReport = match which {
        "rank-sketch" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", Some(n as i64))?;
            let r = ctx.nonneg("r", None)?;
            let big_r = ctx.nonneg("R", Some(r as i64 + 1))?;
            let t = ctx.nonneg("t", Some(2))?;
            let eps = eps_flag(ctx, "1/4", "1/2")?;
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_rank_sketch(&f, n, m, r, big_r, t, eps, trials, seed)?
        }
        "two-bit" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", Some(n as i64))?;
            let r = ctx.nonneg("r", None)?;
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_two_bit(&f, n, m, r, trials, seed)?
        }
        "intersect-small" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", None)?;
            let l = ctx.nonneg("l", Some(m as i64))?;
            let big_r = ctx.nonneg("R", None)?;
            let eps = eps_flag(ctx, "1/3", "1/3")?;
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_intersect_small(&f, n, m, l, big_r, eps, trials, seed)?
        }
        "intersect-large" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", None)?;
            let l = ctx.nonneg("l", Some(m as i64))?;
            let big_r = ctx.nonneg("R", None)?;
            let variant = ctx.string("variant", "two-bit", &["two-bit", "masked"])?;
            let v = if variant == "masked" { LargeErrorVariant::Masked(ctx.nonneg("k", Some(1))?) } else { LargeErrorVariant::TwoBit };
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_intersect_large(&f, n, m, l, big_r, v, trials, seed)?
        }
        "streaming" => {
            let n = ctx.nonneg("n", None)?;
            let r = ctx.nonneg("r", None)?;
            let eps = eps_flag(ctx, "1/4", "1/2")?;
            let passes = ctx.nonneg("passes", Some(1))?;
            let trials = ctx.u64("trials", 500)?;
            protocols::simulate_streaming(&f, n, r, eps, passes, trials, seed)?
        }
        "blq" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", Some(n as i64))?;
            let r = ctx.nonneg("r", None)?;
            let eps = eps_flag(ctx, "1/4", "1/2")?;
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_blq(&f, n, m, r, eps, trials, seed)?
        }
        "symmetrize" => {
            let n = ctx.nonneg("n", None)?;
            let m = ctx.nonneg("m", Some(n as i64))?;
            let r = ctx.nonneg("r", None)?;
            let t = ctx.nonneg("t", Some(3))?;
            let eps = eps_flag(ctx, "1/4", "1/2")?;
            let trials = ctx.u64("trials", 1000)?;
            protocols::simulate_symmetrize(&f, n, m, r, t, eps, trials, seed)?
        }
        other => return Err(Error::Internal(format!("unknown protocol {other}"))),
    };
    let mut o = out(obj(sim_report(&rep)));
    o.seed = Some(seed);
    o.tolerances.insert("ci".into(), tolerance(protocols::Z99, "two-sided 99% normal interval: z * sqrt(p(1-p)/trials) or z * s/sqrt(trials)"));
    o.sim = Some(rep);
    Ok(o)
}
