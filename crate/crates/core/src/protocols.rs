//! Seeded simulations of the randomized protocols, the streaming and
//! bilinear-query algorithms, and the reductions between them. Every run
//! writes to a [`Blackboard`] so the bit count can be compared with the
//! closed-form cost of the path it took.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{require, Error, Result};
use crate::gf::{Elem, Field};
use crate::matq::{enumerate_all, MatQ};
use crate::qcomb::{qpow, rat_int, rat_to_f64, BigRat};
use crate::rng::RngStream;
use crate::subspaces::{random_pair_with_intersection, Subspace};

/// z-value of a two-sided 99% normal interval.
pub const Z99: f64 = 2.576;

/// ⌈log₂ q⌉, bits per field element.
pub fn elem_bits(q: u32) -> u64 {
    (32 - (q - 1).leading_zeros()) as u64
}

/// Smallest Δ ≥ 0 with q^Δ ≥ x.
pub fn delta_ceil(q: u32, x: f64) -> i64 {
    let mut d = 0;
    let mut p = 1.0f64;
    while p < x * (1.0 - 1e-12) {
        p *= q as f64;
        d += 1;
    }
    d
}

/// Largest Δ ≥ 0 with q^Δ ≤ x (0 when x < 1).
pub fn delta_floor(q: u32, x: f64) -> i64 {
    let mut d = 0;
    let mut p = q as f64;
    while p <= x * (1.0 + 1e-12) {
        p *= q as f64;
        d += 1;
    }
    d
}

/// ⌈log_q(8/ε)⌉, used by the sketching protocols.
pub fn sketch_delta(q: u32, eps: f64) -> i64 {
    delta_ceil(q, 8.0 / eps)
}

/// ⌊log_q(24/ε)⌋, used by the small-error intersection protocol.
pub fn intersect_delta(q: u32, eps: f64) -> i64 {
    delta_floor(q, 24.0 / eps)
}

/// Δ of the large-error intersection protocols.
pub const LARGE_ERROR_DELTA: i64 = 7;

/// Shared blackboard with per-party bit counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Blackboard {
    pub per_party: Vec<u64>,
}

impl Blackboard {
    pub fn new(parties: usize) -> Blackboard {
        Blackboard { per_party: vec![0; parties] }
    }
    pub fn write(&mut self, party: usize, bits: u64) {
        self.per_party[party] += bits;
    }
    pub fn total(&self) -> u64 {
        self.per_party.iter().sum()
    }
}

/// Record of one protocol execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub bits_written: u64,
    /// Closed-form cost of the execution path taken.
    pub declared_cost: u64,
    pub passes: Option<u64>,
    pub queries: Option<u64>,
    pub output: i64,
    pub rng_seed: u64,
    pub per_party: Vec<u64>,
}

impl Transcript {
    fn new(board: Blackboard, declared_cost: u64, output: i64, rng: &RngStream) -> Transcript {
        Transcript {
            bits_written: board.total(),
            declared_cost,
            passes: None,
            queries: None,
            output,
            rng_seed: rng.seed,
            per_party: board.per_party,
        }
    }
    pub fn cost_matches(&self) -> bool {
        self.bits_written == self.declared_cost
    }
}

/// How an empirical statistic is compared with its theoretical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// empirical − half-width ≤ bound.
    AtMost,
    /// empirical + half-width ≥ bound.
    AtLeast,
    /// |empirical − bound| ≤ half-width.
    Matches,
    /// Reported only.
    Info,
}

/// Monte Carlo estimate with a 99% binomial/normal half-width.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub name: String,
    pub trials: u64,
    pub empirical: f64,
    pub half_width: f64,
    pub bound: Option<f64>,
    pub relation: Relation,
}

impl ErrorReport {
    /// Proportion of `hits` among `trials`; half-width 2.576·√(p̂(1−p̂)/trials).
    pub fn proportion(name: &str, hits: u64, trials: u64, bound: Option<f64>, relation: Relation) -> ErrorReport {
        let p = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
        let hw = if trials == 0 { 0.0 } else { Z99 * libm::sqrt(p * (1.0 - p) / trials as f64) };
        ErrorReport { name: name.into(), trials, empirical: p, half_width: hw, bound, relation }
    }

    /// Sample mean with half-width 2.576·s/√trials.
    pub fn mean(name: &str, sum: f64, sum_sq: f64, trials: u64, bound: Option<f64>, relation: Relation) -> ErrorReport {
        let n = trials.max(1) as f64;
        let m = sum / n;
        let var = if trials > 1 { ((sum_sq - n * m * m) / (n - 1.0)).max(0.0) } else { 0.0 };
        ErrorReport { name: name.into(), trials, empirical: m, half_width: Z99 * libm::sqrt(var / n), bound, relation }
    }

    pub fn exact(name: &str, value: f64, bound: Option<f64>, relation: Relation) -> ErrorReport {
        ErrorReport { name: name.into(), trials: 0, empirical: value, half_width: 0.0, bound, relation }
    }

    pub fn pass(&self) -> bool {
        let slack = 1e-12 * self.empirical.abs().max(1.0);
        match (self.relation, self.bound) {
            (Relation::Info, _) | (_, None) => true,
            (Relation::AtMost, Some(b)) => self.empirical - self.half_width <= b + slack,
            (Relation::AtLeast, Some(b)) => self.empirical + self.half_width >= b - slack,
            (Relation::Matches, Some(b)) => libm::fabs(self.empirical - b) <= self.half_width + slack,
        }
    }
}

/// Running sums for a mean estimate.
#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    sum: f64,
    sum_sq: f64,
    n: u64,
}

impl Acc {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.n += 1;
    }
    fn report(&self, name: &str, bound: Option<f64>, relation: Relation) -> ErrorReport {
        ErrorReport::mean(name, self.sum, self.sum_sq, self.n, bound, relation)
    }
}

/// Outcome of a Monte Carlo driver.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub protocol: String,
    pub trials: u64,
    pub seed: u64,
    pub reports: Vec<ErrorReport>,
    /// Transcripts whose bit count differs from the declared path cost.
    pub cost_mismatches: u64,
    pub max_bits: u64,
    /// Violations of exact (non-statistical) per-trial assertions.
    pub exact_violations: u64,
    pub notes: Vec<(String, String)>,
}

impl SimReport {
    fn new(protocol: &str, trials: u64, seed: u64) -> SimReport {
        SimReport {
            protocol: protocol.into(),
            trials,
            seed,
            reports: Vec::new(),
            cost_mismatches: 0,
            max_bits: 0,
            exact_violations: 0,
            notes: Vec::new(),
        }
    }
    fn record(&mut self, t: &Transcript) {
        if !t.cost_matches() {
            self.cost_mismatches += 1;
        }
        self.max_bits = self.max_bits.max(t.bits_written);
    }
    fn note(&mut self, k: &str, v: String) {
        self.notes.push((k.into(), v));
    }
    pub fn pass(&self) -> bool {
        self.cost_mismatches == 0 && self.exact_violations == 0 && self.reports.iter().all(|r| r.pass())
    }
}

/// (A, M − A) with rk M = rank and A uniform.
pub fn rank_instance(field: &Field, n: usize, m: usize, rank: usize, rng: &mut RngStream) -> Result<(MatQ, MatQ)> {
    let target = MatQ::sample_rank(field, n, m, rank, rng)?;
    let a = MatQ::sample_uniform(field, n, m, rng);
    let b = target.sub(&a)?;
    Ok((a, b))
}

/// t uniform matrices summing to a matrix of the given rank.
pub fn rank_instance_multi(field: &Field, n: usize, m: usize, rank: usize, t: usize, rng: &mut RngStream) -> Result<Vec<MatQ>> {
    require(t >= 1, "t >= 1")?;
    let target = MatQ::sample_rank(field, n, m, rank, rng)?;
    let mut parts: Vec<MatQ> = (0..t - 1).map(|_| MatQ::sample_uniform(field, n, m, rng)).collect();
    let mut last = target;
    for p in &parts {
        last = last.sub(p)?;
    }
    parts.push(last);
    Ok(parts)
}

// ---------------------------------------------------------------------------
// Random-projection sketch protocol.

/// t(R+Δ)²⌈log₂ q⌉.
pub fn sketch_cost(t: u64, big_r: i64, delta: i64, q: u32) -> u64 {
    let s = (big_r + delta) as u64;
    t * s * s * elem_bits(q)
}

/// Each of t players writes X A_i Y; output min{rk(XAY), R}.
pub fn rank_sketch_protocol(inputs: &[MatQ], big_r: usize, eps: f64, rng: &mut RngStream) -> Result<Transcript> {
    require(inputs.len() >= 2, "t >= 2")?;
    require(eps > 0.0 && eps < 1.0, "0 < eps < 1")?;
    let field = inputs[0].field().clone();
    let (n, m) = (inputs[0].rows(), inputs[0].cols());
    if inputs.iter().any(|a| a.rows() != n || a.cols() != m) {
        return Err(Error::Shape("all inputs must have the same shape".into()));
    }
    require(n.min(m) >= big_r, "min{n,m} >= R")?;
    let delta = sketch_delta(field.q(), eps);
    let s = big_r + delta as usize;
    let start = rng.clone();
    let x = MatQ::sample_uniform(&field, s, n, rng);
    let y = MatQ::sample_uniform(&field, m, s, rng);
    let mut board = Blackboard::new(inputs.len());
    let mut sum = MatQ::zeros(&field, s, s);
    for (i, a) in inputs.iter().enumerate() {
        let msg = x.mul(a)?.mul(&y)?;
        board.write(i, (s * s) as u64 * elem_bits(field.q()));
        sum = sum.add(&msg)?;
    }
    let out = sum.rank().min(big_r);
    let cost = sketch_cost(inputs.len() as u64, big_r as i64, delta, field.q());
    Ok(Transcript::new(board, cost, out as i64, &start))
}

pub fn simulate_rank_sketch(
    field: &Field,
    n: usize,
    m: usize,
    low_rank: usize,
    big_r: usize,
    t: usize,
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    require(low_rank <= n.min(m), "r <= min{n,m}")?;
    let hi = n.min(m);
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("rank-sketch", trials, seed);
    let mut errors = 0;
    let mut overshoot = 0;
    for i in 0..trials {
        let mut rng = master.split(i);
        let rank = if rng.coin() { low_rank } else { hi };
        let inputs = rank_instance_multi(field, n, m, rank, t, &mut rng)?;
        let tr = rank_sketch_protocol(&inputs, big_r, eps, &mut rng)?;
        rep.record(&tr);
        let truth = rank.min(big_r) as i64;
        if tr.output != truth {
            errors += 1;
        }
        if tr.output > truth {
            overshoot += 1;
        }
    }
    rep.exact_violations = overshoot;
    rep.reports.push(ErrorReport::proportion("error", errors, trials, Some(eps), Relation::AtMost));
    rep.note("delta", format!("{}", sketch_delta(field.q(), eps)));
    rep.note("declared_cost", format!("{}", sketch_cost(t as u64, big_r as i64, sketch_delta(field.q(), eps), field.q())));
    rep.note("instance_ranks", format!("{low_rank},{hi}"));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Two-bit protocol and the shift distinguisher.

/// −1/q − (q−1)/q^{rk+1}.
pub fn two_bit_expectation(q: u64, rank: i64) -> BigRat {
    let qq = rat_int(BigInt::from(q));
    -(BigRat::one() / &qq) - rat_int(BigInt::from(q - 1)) / rat_int(qpow(q, (rank + 1) as u64))
}

/// Shared x, y and H: F → ±1; output −H(xᵀAy)H(−xᵀBy). Two bits.
pub fn two_bit_rank(a: &MatQ, b: &MatQ, rng: &mut RngStream) -> Result<Transcript> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape("A and B must have the same shape".into()));
    }
    let field = a.field().clone();
    let start = rng.clone();
    let q = field.q() as u64;
    let x: Vec<Elem> = (0..a.rows()).map(|_| rng.below(q) as Elem).collect();
    let y: Vec<Elem> = (0..a.cols()).map(|_| rng.below(q) as Elem).collect();
    let h: Vec<i64> = (0..q).map(|_| rng.sign() as i64).collect();
    let xa = a.vec_mul(&x)?;
    let xb = b.vec_mul(&x)?;
    let u = crate::matq::dot(&field, &xa, &y);
    let v = field.neg(crate::matq::dot(&field, &xb, &y));
    let mut board = Blackboard::new(2);
    board.write(0, 1);
    board.write(1, 1);
    Ok(Transcript::new(board, 2, -h[u as usize] * h[v as usize], &start))
}

/// Exact E[output] over every (x, y, H), for tiny q and shapes.
pub fn two_bit_exhaustive(a: &MatQ, b: &MatQ) -> Result<BigRat> {
    let field = a.field().clone();
    let q = field.q();
    require(q <= 8, "q <= 8 for exhaustive H")?;
    let xs: Vec<MatQ> = enumerate_all(&field, 1, a.rows(), 1 << 16)?.collect();
    let ys: Vec<MatQ> = enumerate_all(&field, 1, a.cols(), 1 << 16)?.collect();
    let hs = 1u64 << q;
    let mut total = BigInt::zero();
    let mut count = BigInt::zero();
    for x in &xs {
        let xa = a.vec_mul(x.data())?;
        let xb = b.vec_mul(x.data())?;
        for y in &ys {
            let u = crate::matq::dot(&field, &xa, y.data());
            let v = field.neg(crate::matq::dot(&field, &xb, y.data()));
            for hbits in 0..hs {
                let hu: i64 = if hbits >> u & 1 == 1 { 1 } else { -1 };
                let hv: i64 = if hbits >> v & 1 == 1 { 1 } else { -1 };
                total += -hu * hv;
                count += 1;
            }
        }
    }
    Ok(BigRat::new(total, count))
}

/// Converts a distinguisher with expectations ≤ α on negative inputs and
/// ≥ β on positive inputs into a protocol with error ½ − (β−α)/8.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftDistinguisher {
    pub alpha: BigRat,
    pub beta: BigRat,
    /// |α+β|/(2+|α+β|).
    pub p: BigRat,
    /// −sgn(α+β), with sgn(0) = 1.
    pub fixed_output: i64,
    /// ½ − (β−α)/8.
    pub error_bound: BigRat,
}

pub fn shift_distinguisher(alpha: &BigRat, beta: &BigRat) -> Result<ShiftDistinguisher> {
    let one = BigRat::one();
    if !(-&one <= *alpha && alpha <= beta && *beta <= one) {
        return Err(Error::Precondition("-1 <= alpha <= beta <= 1".into()));
    }
    let s = alpha + beta;
    let two = rat_int(BigInt::from(2));
    Ok(ShiftDistinguisher {
        p: s.abs() / (&two + s.abs()),
        fixed_output: if s.is_negative() { 1 } else { -1 },
        error_bound: BigRat::new(1.into(), 2.into()) - (beta - alpha) / rat_int(BigInt::from(8)),
        alpha: alpha.clone(),
        beta: beta.clone(),
    })
}

impl ShiftDistinguisher {
    /// Runs the wrapped protocol with probability 1 − p, else outputs the
    /// fixed value with no communication.
    pub fn run(&self, rng: &mut RngStream, inner: impl FnOnce(&mut RngStream) -> Result<Transcript>) -> Result<Transcript> {
        let start = rng.clone();
        if rng.bernoulli(rat_to_f64(&self.p)) {
            return Ok(Transcript::new(Blackboard::new(2), 0, self.fixed_output, &start));
        }
        inner(rng)
    }

    /// Expected output of the wrapped protocol given the inner expectation.
    pub fn wrapped_expectation(&self, inner: &BigRat) -> BigRat {
        &self.p * rat_int(BigInt::from(self.fixed_output)) + (BigRat::one() - &self.p) * inner
    }
}

/// Shift distinguisher for the two-bit protocol at threshold r.
pub fn two_bit_shift(q: u64, r: i64) -> Result<ShiftDistinguisher> {
    shift_distinguisher(&two_bit_expectation(q, r), &two_bit_expectation(q, r + 1))
}

pub fn simulate_two_bit(field: &Field, n: usize, m: usize, r: usize, trials: u64, seed: u64) -> Result<SimReport> {
    require(r < n.min(m), "r < min{n,m}")?;
    let q = field.q() as u64;
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("two-bit", trials, seed);
    let wrap = two_bit_shift(q, r as i64)?;
    let mut low = Acc::default();
    let mut high = Acc::default();
    let mut wrapped_errors = 0;
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let rank = if positive { r + 1 } else { r };
        let (a, b) = rank_instance(field, n, m, rank, &mut rng)?;
        let tr = two_bit_rank(&a, &b, &mut rng)?;
        rep.record(&tr);
        if positive {
            high.push(tr.output as f64);
        } else {
            low.push(tr.output as f64);
        }
        let w = wrap.run(&mut rng, |g| two_bit_rank(&a, &b, g))?;
        if w.bits_written > 2 {
            rep.cost_mismatches += 1;
        }
        let truth = if positive { 1 } else { -1 };
        if w.output != truth {
            wrapped_errors += 1;
        }
    }
    let el = rat_to_f64(&two_bit_expectation(q, r as i64));
    let eh = rat_to_f64(&two_bit_expectation(q, r as i64 + 1));
    rep.reports.push(low.report(&format!("mean_output_rank_{r}"), Some(el), Relation::Matches));
    rep.reports.push(high.report(&format!("mean_output_rank_{}", r + 1), Some(eh), Relation::Matches));
    rep.reports.push(ErrorReport::proportion(
        "wrapped_error",
        wrapped_errors,
        trials,
        Some(rat_to_f64(&wrap.error_bound)),
        Relation::AtMost,
    ));
    rep.note("shift_p", format!("{}", wrap.p));
    rep.note("error_bound", format!("{}", wrap.error_bound));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Subspace intersection, small error.

/// The six conditions under which the small-error protocol is correct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProjectionConditions {
    pub preserve_s: bool,
    pub preserve_t: bool,
    pub preserve_xs_perp: bool,
    pub preserve_xt_perp: bool,
    pub preserve_sum: bool,
    pub preserve_perp_sum: bool,
}

impl ProjectionConditions {
    pub fn first_four(&self) -> bool {
        self.preserve_s && self.preserve_t && self.preserve_xs_perp && self.preserve_xt_perp
    }
    pub fn all_six(&self) -> bool {
        self.first_four() && self.preserve_sum && self.preserve_perp_sum
    }
}

/// Result of drawing X, Y and projecting S, T.
#[derive(Debug, Clone)]
pub struct Projection {
    pub conditions: ProjectionConditions,
    pub s_prime: Subspace,
    pub t_prime: Subspace,
    /// m + ℓ − 2r + 3Δ.
    pub ambient: usize,
}

/// X ∈ F^{(m+ℓ−r+Δ)×n}, Y ∈ F^{(m+ℓ−2r+3Δ)×(m+ℓ−r+Δ)};
/// S′ = Y((X(S))^⊥), T′ = Y((X(T))^⊥).
pub fn project_pair(s: &Subspace, t: &Subspace, r: usize, delta: usize, rng: &mut RngStream) -> Result<Projection> {
    let field = s.field().clone();
    let (m, l, n) = (s.dim(), t.dim(), s.ambient_dim());
    require(r <= m.min(l), "r <= min{m,l}")?;
    let d1 = m + l - r + delta;
    let d2 = m + l - 2 * r + 3 * delta;
    let x = MatQ::sample_uniform(&field, d1, n, rng);
    let y = MatQ::sample_uniform(&field, d2, d1, rng);
    let xs = s.image(&x)?;
    let xt = t.image(&x)?;
    let xs_perp = xs.orth();
    let xt_perp = xt.orth();
    let s_prime = xs_perp.image(&y)?;
    let t_prime = xt_perp.image(&y)?;
    let sum = s.sum(t)?;
    let perp_sum = xs_perp.sum(&xt_perp)?;
    let conditions = ProjectionConditions {
        preserve_s: xs.dim() == m,
        preserve_t: xt.dim() == l,
        preserve_xs_perp: s_prime.dim() == xs_perp.dim(),
        preserve_xt_perp: t_prime.dim() == xt_perp.dim(),
        preserve_sum: sum.image(&x)?.dim() >= sum.dim().min(m + l - r),
        preserve_perp_sum: perp_sum.image(&y)?.dim() == perp_sum.dim(),
    };
    Ok(Projection { conditions, s_prime, t_prime, ambient: d2 })
}

/// Cost of the small-error protocol on each path.
pub fn intersect_small_cost(m: usize, l: usize, r: usize, delta: usize, q: u32, conditions_hold: bool) -> u64 {
    if !conditions_hold {
        return 2;
    }
    let amb = (m + l - 2 * r + 3 * delta) as u64;
    let dim = (m.min(l) - r + delta) as u64;
    2 + amb * dim * elem_bits(q) + 1
}

/// (2max{m,ℓ} − 2r + 3Δ)(min{m,ℓ} − r + Δ)⌈log₂ q⌉ + 3.
pub fn intersect_small_cost_bound(m: usize, l: usize, r: usize, delta: usize, q: u32) -> u64 {
    let a = (2 * m.max(l) - 2 * r + 3 * delta) as u64;
    let b = (m.min(l) - r + delta) as u64;
    2 + a * b * elem_bits(q) + 1
}

/// Equality check for m = ℓ = R: h random linear hashes of the canonical
/// bases, h = ⌈log_q(1/ε)⌉.
pub fn equality_hash_cost(q: u32, eps: f64) -> u64 {
    delta_ceil(q, 1.0 / eps) as u64 * elem_bits(q) + 1
}

#[derive(Debug, Clone)]
pub struct IntersectRun {
    pub transcript: Transcript,
    pub conditions: Option<ProjectionConditions>,
    pub delta: usize,
}

/// Output 1 iff dim(S ∩ T) < R, with error ≤ 24 q^{−Δ−1}.
pub fn intersect_protocol_small_error(s: &Subspace, t: &Subspace, big_r: usize, eps: f64, rng: &mut RngStream) -> Result<IntersectRun> {
    let field = s.field().clone();
    let q = field.q();
    let (m, l, n) = (s.dim(), t.dim(), s.ambient_dim());
    if !(0 < big_r && big_r <= m.min(l) && m.max(l) <= n) {
        return Err(Error::Precondition(format!(
            "0 < R <= min{{m,l}} <= max{{m,l}} <= n fails at (n,m,l,R) = ({n},{m},{l},{big_r})"
        )));
    }
    require(eps > 0.0 && eps <= 1.0 / 3.0, "0 < eps <= 1/3")?;
    let start = rng.clone();
    if m == l && l == big_r {
        let h = delta_ceil(q, 1.0 / eps) as usize;
        let ka = s.key();
        let kb = t.key();
        let mut board = Blackboard::new(2);
        let mut equal = true;
        for _ in 0..h {
            let w: Vec<Elem> = (0..ka.len()).map(|_| rng.below(q as u64) as Elem).collect();
            board.write(0, elem_bits(q));
            if crate::matq::dot(&field, &ka, &w) != crate::matq::dot(&field, &kb, &w) {
                equal = false;
            }
        }
        board.write(1, 1);
        let out = if equal { -1 } else { 1 };
        let tr = Transcript::new(board, equality_hash_cost(q, eps), out, &start);
        return Ok(IntersectRun { transcript: tr, conditions: None, delta: h });
    }
    let r = big_r - 1;
    let delta = intersect_delta(q, eps) as usize;
    let p = project_pair(s, t, r, delta, rng)?;
    let mut board = Blackboard::new(2);
    board.write(0, 1);
    board.write(1, 1);
    let c = p.conditions;
    let out;
    if !c.first_four() {
        out = rng.sign() as i64;
    } else {
        let (sender, dim) = if p.s_prime.dim() <= p.t_prime.dim() { (0, p.s_prime.dim()) } else { (1, p.t_prime.dim()) };
        board.write(sender, (p.ambient * dim) as u64 * elem_bits(q));
        let inter = p.s_prime.intersection_dim(&p.t_prime)?;
        out = if inter <= delta { 1 } else { -1 };
        board.write(1 - sender, 1);
    }
    let tr = Transcript::new(board, intersect_small_cost(m, l, r, delta, q, c.first_four()), out, &start);
    Ok(IntersectRun { transcript: tr, conditions: Some(c), delta })
}

pub fn simulate_intersect_small(
    field: &Field,
    n: usize,
    m: usize,
    l: usize,
    big_r: usize,
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("intersect-small", trials, seed);
    let low = (m + l).saturating_sub(n);
    require(low < big_r, "max{0, m+l-n} < R")?;
    let mut errors = 0;
    let mut delta = 0;
    let mut all_six = 0;
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let inter = if positive { big_r } else { big_r - 1 };
        let (s, t) = random_pair_with_intersection(field, n, m, l, inter, &mut rng)?;
        let run = intersect_protocol_small_error(&s, &t, big_r, eps, &mut rng)?;
        rep.record(&run.transcript);
        delta = run.delta;
        let truth = if positive { -1 } else { 1 };
        let wrong = run.transcript.output != truth;
        if wrong {
            errors += 1;
        }
        if let Some(c) = run.conditions {
            if c.all_six() {
                all_six += 1;
                if wrong {
                    rep.exact_violations += 1;
                }
            }
        }
    }
    let q = field.q();
    let bound = if m == l && l == big_r { eps } else { 24.0 * libm::pow(q as f64, -(delta as f64) - 1.0) };
    rep.reports.push(ErrorReport::proportion("error", errors, trials, Some(bound), Relation::AtMost));
    rep.reports.push(ErrorReport::proportion("six_conditions_hold", all_six, trials, None, Relation::Info));
    rep.note("delta", format!("{delta}"));
    if !(m == l && l == big_r) {
        rep.note("cost_bound", format!("{}", intersect_small_cost_bound(m, l, big_r - 1, delta, q)));
        if rep.max_bits > intersect_small_cost_bound(m, l, big_r - 1, delta, q) {
            rep.exact_violations += 1;
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Subspace intersection, large error.

/// α′ = q^{−m−ℓ+2r−2Δ}(1+8q^{−Δ})², β′ = q^{−m−ℓ+2r−2Δ}·q(1−16q^{−Δ−1}).
pub fn two_bit_intersect_bounds(q: u64, m: i64, l: i64, r: i64, delta: i64) -> (BigRat, BigRat) {
    let base = crate::qcomb::qpow_rat(q, -m - l + 2 * r - 2 * delta);
    let one = BigRat::one();
    let a = &one + rat_int(BigInt::from(8)) * crate::qcomb::qpow_rat(q, -delta);
    let b = &one - rat_int(BigInt::from(16)) * crate::qcomb::qpow_rat(q, -delta - 1);
    (&base * &a * &a, base * rat_int(BigInt::from(q)) * b)
}

/// α″ = q^{−k}(1+8q^{−Δ})², β″ = q^{−k+1}(1−16q^{−Δ−1}).
pub fn masked_intersect_bounds(q: u64, k: i64, delta: i64) -> (BigRat, BigRat) {
    let one = BigRat::one();
    let a = &one + rat_int(BigInt::from(8)) * crate::qcomb::qpow_rat(q, -delta);
    let b = &one - rat_int(BigInt::from(16)) * crate::qcomb::qpow_rat(q, -delta - 1);
    (crate::qcomb::qpow_rat(q, -k) * &a * &a, crate::qcomb::qpow_rat(q, -k + 1) * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LargeErrorVariant {
    TwoBit,
    Masked(usize),
}

#[derive(Debug, Clone)]
pub struct LargeErrorRun {
    pub transcript: Transcript,
    pub z: bool,
    pub inter_dim: Option<usize>,
    /// E[output | X, Y] as a power of q, or None when it is zero.
    pub cond_exponent: Option<i64>,
    /// Masked variant: (lower, upper) exponents of the sandwich.
    pub sandwich: Option<(i64, i64)>,
}

/// Cost of the masked protocol on each path: "fail", "high", "low".
pub fn masked_cost(m: usize, l: usize, r: usize, delta: usize, k: usize, q: u32, path: &str) -> u64 {
    let (big, small) = (m.max(l), m.min(l));
    let amb = (big + small - 2 * r + 3 * delta) as u64;
    let codim = (small - r + 2 * delta - k) as u64;
    match path {
        "fail" => 2,
        "high" => 2 + codim * amb * elem_bits(q) + 1,
        _ => 2 + codim * amb * elem_bits(q) + amb * elem_bits(q) + 1,
    }
}

fn signed_with_mean(rng: &mut RngStream, mean: f64) -> i64 {
    if rng.bernoulli((1.0 + mean) / 2.0) {
        1
    } else {
        -1
    }
}

/// Extends `base` inside `within` to dimension `target` with vectors of `within`.
fn extend_within(base: &Subspace, within: &Subspace, target: usize, rng: &mut RngStream) -> Result<Subspace> {
    let mut cur = base.clone();
    let mut guard = 0;
    while cur.dim() < target {
        let v = within.sample_vector(rng);
        let next = cur.sum(&Subspace::span(cur.field(), cur.ambient_dim(), &[v])?)?;
        cur = next;
        guard += 1;
        if guard > 10_000 {
            return Err(Error::Internal("subspace extension did not terminate".into()));
        }
    }
    Ok(cur)
}

/// Π′ (two bits) or Π″ (masked) on (S, T) at R; positive output favours
/// dim(S ∩ T) ≥ R.
pub fn intersect_protocol_large_error(
    s: &Subspace,
    t: &Subspace,
    big_r: usize,
    variant: LargeErrorVariant,
    rng: &mut RngStream,
) -> Result<LargeErrorRun> {
    let field = s.field().clone();
    let q = field.q();
    let (m, l, n) = (s.dim(), t.dim(), s.ambient_dim());
    let low = (m + l).saturating_sub(n);
    if !(low < big_r && big_r <= m.min(l)) {
        return Err(Error::Precondition(format!(
            "max{{0,m+l-n}} < R <= min{{m,l}} fails at (n,m,l,R) = ({n},{m},{l},{big_r})"
        )));
    }
    let r = big_r - 1;
    let delta = LARGE_ERROR_DELTA as usize;
    let start = rng.clone();
    // The masked variant treats the larger subspace as Alice's.
    let (s, t) = if m >= l { (s, t) } else { (t, s) };
    let (m, l) = (s.dim(), t.dim());
    let p = project_pair(s, t, r, delta, rng)?;
    let z = p.conditions.first_four();
    let mut board = Blackboard::new(2);
    board.write(0, 1);
    board.write(1, 1);
    match variant {
        LargeErrorVariant::TwoBit => {
            let v = Subspace::full(&field, p.ambient).sample_vector(rng);
            let inside = z && p.s_prime.contains(&v)? && p.t_prime.contains(&v)?;
            let out = if inside { 1 } else { rng.sign() as i64 };
            let inter = if z { Some(p.s_prime.intersection_dim(&p.t_prime)?) } else { None };
            let cond_exponent = inter.map(|d| d as i64 - p.ambient as i64);
            Ok(LargeErrorRun {
                transcript: Transcript::new(board, 2, out, &start),
                z,
                inter_dim: inter,
                cond_exponent,
                sandwich: None,
            })
        }
        LargeErrorVariant::Masked(k) => {
            if !(1 <= k && k <= l - r) {
                return Err(Error::Precondition(format!("1 <= k <= l - r fails at k = {k}, l - r = {}", l - r)));
            }
            let ki = k as i64;
            let di = delta as i64;
            if !z {
                let out = rng.sign() as i64;
                return Ok(LargeErrorRun {
                    transcript: Transcript::new(board, masked_cost(m, l, r, delta, k, q, "fail"), out, &start),
                    z,
                    inter_dim: None,
                    cond_exponent: None,
                    sandwich: None,
                });
            }
            let inter = p.s_prime.intersection_dim(&p.t_prime)?;
            let full = Subspace::full(&field, p.ambient);
            let u = extend_within(&p.t_prime, &full, m - r + delta + k, rng)?;
            board.write(1, (p.ambient - u.dim()) as u64 * p.ambient as u64 * elem_bits(q));
            let su = p.s_prime.intersect(&u)?;
            let sandwich = (-ki - di + (inter as i64).min(di + 1), -ki - di + inter as i64);
            if su.dim() >= k + delta + 1 {
                let e = -ki + 1;
                let out = signed_with_mean(rng, libm::pow(q as f64, e as f64));
                board.write(0, 1);
                Ok(LargeErrorRun {
                    transcript: Transcript::new(board, masked_cost(m, l, r, delta, k, q, "high"), out, &start),
                    z,
                    inter_dim: Some(inter),
                    cond_exponent: Some(e),
                    sandwich: Some(sandwich),
                })
            } else {
                let s2 = extend_within(&su, &p.s_prime, k + delta, rng)?;
                let v = s2.sample_vector(rng);
                board.write(0, p.ambient as u64 * elem_bits(q));
                let out = if p.t_prime.contains(&v)? { 1 } else { rng.sign() as i64 };
                board.write(1, 1);
                let e = s2.intersection_dim(&p.t_prime)? as i64 - s2.dim() as i64;
                Ok(LargeErrorRun {
                    transcript: Transcript::new(board, masked_cost(m, l, r, delta, k, q, "low"), out, &start),
                    z,
                    inter_dim: Some(inter),
                    cond_exponent: Some(e),
                    sandwich: Some(sandwich),
                })
            }
        }
    }
}

pub fn simulate_intersect_large(
    field: &Field,
    n: usize,
    m: usize,
    l: usize,
    big_r: usize,
    variant: LargeErrorVariant,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    let q = field.q();
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("intersect-large", trials, seed);
    let r = big_r.checked_sub(1).ok_or_else(|| Error::Precondition("R >= 1".into()))?;
    let (mut out_lo, mut out_hi, mut cond_lo, mut cond_hi) = (Acc::default(), Acc::default(), Acc::default(), Acc::default());
    let qf = q as f64;
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let inter = if positive { big_r } else { r };
        let (s, t) = random_pair_with_intersection(field, n, m, l, inter, &mut rng)?;
        let run = intersect_protocol_large_error(&s, &t, big_r, variant, &mut rng)?;
        rep.record(&run.transcript);
        let cond = run.cond_exponent.map_or(0.0, |e| libm::pow(qf, e as f64));
        if let (Some((lo, hi)), Some(e)) = (run.sandwich, run.cond_exponent) {
            if e < lo || e > hi {
                rep.exact_violations += 1;
            }
        }
        if positive {
            out_hi.push(run.transcript.output as f64);
            cond_hi.push(cond);
        } else {
            out_lo.push(run.transcript.output as f64);
            cond_lo.push(cond);
        }
    }
    let delta = LARGE_ERROR_DELTA;
    let (alpha, beta) = match variant {
        LargeErrorVariant::TwoBit => two_bit_intersect_bounds(q as u64, m as i64, l as i64, r as i64, delta),
        LargeErrorVariant::Masked(k) => masked_intersect_bounds(q as u64, k as i64, delta),
    };
    let (a, b) = (rat_to_f64(&alpha), rat_to_f64(&beta));
    rep.reports.push(out_lo.report("mean_output_below_R", Some(a), Relation::AtMost));
    rep.reports.push(out_hi.report("mean_output_at_R", Some(b), Relation::AtLeast));
    rep.reports.push(cond_lo.report("conditional_mean_below_R", Some(a), Relation::AtMost));
    rep.reports.push(cond_hi.report("conditional_mean_at_R", Some(b), Relation::AtLeast));
    let gap_bound = match variant {
        LargeErrorVariant::TwoBit => libm::pow(qf, -((m + l) as f64) + 2.0 * r as f64 - 14.0) / 2.0,
        LargeErrorVariant::Masked(k) => libm::pow(qf, -(k as f64)) / 2.0,
    };
    let (lo_r, hi_r) = (cond_lo.report("", None, Relation::Info), cond_hi.report("", None, Relation::Info));
    rep.reports.push(ErrorReport {
        name: "conditional_mean_gap".into(),
        trials,
        empirical: hi_r.empirical - lo_r.empirical,
        half_width: libm::sqrt(lo_r.half_width * lo_r.half_width + hi_r.half_width * hi_r.half_width),
        bound: Some(gap_bound),
        relation: Relation::AtLeast,
    });
    rep.reports.push(ErrorReport::exact("beta_minus_alpha", b - a, Some(gap_bound), Relation::AtLeast));
    rep.note("alpha", format!("{alpha}"));
    rep.note("beta", format!("{beta}"));
    let wrap = shift_distinguisher(&alpha, &beta)?;
    rep.note("wrapped_error_bound", format!("{}", rat_to_f64(&wrap.error_bound)));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Streaming.

/// A multi-pass streaming algorithm over the rows of a matrix whose memory
/// can be handed between parties.
pub trait StreamingAlgorithm {
    fn begin_pass(&mut self, pass: usize);
    fn process_row(&mut self, index: usize, row: &[Elem]) -> Result<()>;
    /// Size of the memory in bits.
    fn memory_bits(&self) -> u64;
    fn output(&self) -> i64;
}

/// Single-pass sketch X M Y of size (r+1+Δ)², deciding rk M ≤ r.
#[derive(Debug, Clone)]
pub struct StreamingRank {
    pub r: usize,
    pub delta: usize,
    x: MatQ,
    y: MatQ,
    pub sketch: MatQ,
}

impl StreamingRank {
    pub fn new(field: &Field, n: usize, m: usize, r: usize, eps: f64, rng: &mut RngStream) -> Result<StreamingRank> {
        require(r < n.min(m), "r < min{n,m}")?;
        let delta = sketch_delta(field.q(), eps) as usize;
        let s = r + 1 + delta;
        Ok(StreamingRank {
            r,
            delta,
            x: MatQ::sample_uniform(field, s, n, rng),
            y: MatQ::sample_uniform(field, m, s, rng),
            sketch: MatQ::zeros(field, s, s),
        })
    }

    /// (r+1+Δ)² + (r+1+Δ)(n+m) field elements.
    pub fn space_elements(&self) -> u64 {
        let s = self.sketch.rows() as u64;
        s * s + s * (self.x.cols() + self.y.rows()) as u64
    }

    pub fn projections(&self) -> (&MatQ, &MatQ) {
        (&self.x, &self.y)
    }
}

impl StreamingAlgorithm for StreamingRank {
    fn begin_pass(&mut self, _pass: usize) {
        self.sketch = MatQ::zeros(self.sketch.field(), self.sketch.rows(), self.sketch.cols());
    }

    fn process_row(&mut self, index: usize, row: &[Elem]) -> Result<()> {
        if row.len() != self.y.rows() {
            return Err(Error::Shape(format!("row length {} but {} columns expected", row.len(), self.y.rows())));
        }
        let field = self.sketch.field().clone();
        let ry = self.y.vec_mul(row)?;
        let s = self.sketch.rows();
        for i in 0..s {
            let c = self.x.get(i, index);
            if c == 0 {
                continue;
            }
            for (j, &v) in ry.iter().enumerate() {
                let cur = self.sketch.get(i, j);
                self.sketch.set(i, j, field.add(cur, field.mul(c, v)));
            }
        }
        Ok(())
    }

    fn memory_bits(&self) -> u64 {
        self.space_elements() * elem_bits(self.sketch.field().q())
    }

    fn output(&self) -> i64 {
        if self.sketch.rank() <= self.r {
            -1
        } else {
            1
        }
    }
}

/// Runs a streaming algorithm over the rows of M for the given passes.
pub fn run_stream(alg: &mut dyn StreamingAlgorithm, m: &MatQ, passes: usize) -> Result<i64> {
    for p in 0..passes {
        alg.begin_pass(p);
        for i in 0..m.rows() {
            alg.process_row(i, m.row(i))?;
        }
    }
    Ok(alg.output())
}

/// [[A, −I, 0], [B, I, 0], [0, 0, I_{n−2h}]] for h × h blocks A, B.
pub fn block_matrix(a: &MatQ, b: &MatQ, n: usize) -> Result<MatQ> {
    let h = a.rows();
    require(a.is_square() && b.rows() == h && b.cols() == h, "A, B square of equal size")?;
    require(2 * h <= n, "2h <= n")?;
    let field = a.field().clone();
    let one = 1;
    let mut m = MatQ::zeros(&field, n, n);
    for i in 0..h {
        for j in 0..h {
            m.set(i, j, a.get(i, j));
            m.set(h + i, j, b.get(i, j));
        }
        m.set(i, h + i, field.neg(one));
        m.set(h + i, h + i, one);
    }
    for i in 2 * h..n {
        m.set(i, i, one);
    }
    Ok(m)
}

/// Alice streams the first ⌊n/2⌋ rows, Bob the rest, memory handed over
/// between them; s(2k−1)+1 bits for k passes.
pub fn streaming_to_protocol(alg: &mut dyn StreamingAlgorithm, a: &MatQ, b: &MatQ, n: usize, passes: usize, rng: &RngStream) -> Result<Transcript> {
    require(passes >= 1, "passes >= 1")?;
    let m = block_matrix(a, b, n)?;
    let h = a.rows();
    let s = alg.memory_bits();
    let mut board = Blackboard::new(2);
    for p in 0..passes {
        alg.begin_pass(p);
        if p > 0 {
            board.write(1, s);
        }
        for i in 0..h {
            alg.process_row(i, m.row(i))?;
        }
        board.write(0, s);
        for i in h..n {
            alg.process_row(i, m.row(i))?;
        }
    }
    board.write(1, 1);
    let k = passes as u64;
    let mut tr = Transcript::new(board, s * (2 * k - 1) + 1, alg.output(), rng);
    tr.passes = Some(k);
    Ok(tr)
}

pub fn simulate_streaming(
    field: &Field,
    n: usize,
    r: usize,
    eps: f64,
    passes: usize,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    let h = n / 2;
    let shift = n - h;
    require(h >= 1, "n >= 2")?;
    require(r >= shift && r < n, "ceil(n/2) <= r < n")?;
    let r0 = r - shift;
    require(r0 < h, "r - ceil(n/2) < floor(n/2)")?;
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("streaming", trials, seed);
    let (mut direct_err, mut proto_err, mut disagree) = (0, 0, 0);
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let rank = if positive { r0 + 1 } else { r0 };
        let (a, b) = rank_instance(field, h, h, rank, &mut rng)?;
        let m = block_matrix(&a, &b, n)?;
        if m.rank() != a.add(&b)?.rank() + shift {
            rep.exact_violations += 1;
        }
        let alg_rng = rng.split(1);
        let mut direct = StreamingRank::new(field, n, n, r, eps, &mut alg_rng.clone())?;
        let d_out = run_stream(&mut direct, &m, passes)?;
        let mut proto = StreamingRank::new(field, n, n, r, eps, &mut alg_rng.clone())?;
        let tr = streaming_to_protocol(&mut proto, &a, &b, n, passes, &rng)?;
        rep.record(&tr);
        let truth = if positive { 1 } else { -1 };
        if d_out != truth {
            direct_err += 1;
        }
        if tr.output != truth {
            proto_err += 1;
        }
        if tr.output != d_out {
            disagree += 1;
        }
    }
    rep.exact_violations += disagree;
    rep.reports.push(ErrorReport::proportion("algorithm_error", direct_err, trials, Some(eps), Relation::AtMost));
    rep.reports.push(ErrorReport::proportion("protocol_error", proto_err, trials, Some(eps), Relation::AtMost));
    let s = StreamingRank::new(field, n, n, r, eps, &mut master.split(u64::MAX))?;
    rep.note("space_elements", format!("{}", s.space_elements()));
    rep.note("memory_bits", format!("{}", s.memory_bits()));
    rep.note("protocol_bits", format!("{}", s.memory_bits() * (2 * passes as u64 - 1) + 1));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Bilinear query model.

/// Black box (u, v) ↦ uᵀ A v with a query counter.
pub struct BilinearOracle<'a> {
    a: &'a MatQ,
    pub queries: u64,
}

impl<'a> BilinearOracle<'a> {
    pub fn new(a: &'a MatQ) -> BilinearOracle<'a> {
        BilinearOracle { a, queries: 0 }
    }
    pub fn query(&mut self, u: &[Elem], v: &[Elem]) -> Result<Elem> {
        self.queries += 1;
        let ua = self.a.vec_mul(u)?;
        Ok(crate::matq::dot(self.a.field(), &ua, v))
    }
}

#[derive(Debug, Clone)]
pub struct BlqRun {
    /// −1 for rk ≤ r, 1 otherwise.
    pub decision: i64,
    pub queries: u64,
    pub sketch: MatQ,
    pub x: MatQ,
    pub y: MatQ,
}

/// (R+Δ)² queries with R = r+1, Δ = ⌈log_q(8/ε)⌉.
pub fn blq_queries(r: i64, delta: i64) -> u64 {
    let s = (r + 1 + delta) as u64;
    s * s
}

pub fn blq_rank(oracle: &mut BilinearOracle, n: usize, m: usize, r: usize, eps: f64, rng: &mut RngStream) -> Result<BlqRun> {
    require(r < n.min(m), "r < min{n,m}")?;
    let field = oracle.a.field().clone();
    let delta = sketch_delta(field.q(), eps) as usize;
    let s = r + 1 + delta;
    let x = MatQ::sample_uniform(&field, s, n, rng);
    let y = MatQ::sample_uniform(&field, m, s, rng);
    let mut sketch = MatQ::zeros(&field, s, s);
    for i in 0..s {
        for j in 0..s {
            let v = oracle.query(x.row(i), &y.col(j))?;
            sketch.set(i, j, v);
        }
    }
    let decision = if sketch.rank() <= r { -1 } else { 1 };
    Ok(BlqRun { decision, queries: oracle.queries, sketch, x, y })
}

pub fn simulate_blq(field: &Field, n: usize, m: usize, r: usize, eps: f64, trials: u64, seed: u64) -> Result<SimReport> {
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("blq", trials, seed);
    let delta = sketch_delta(field.q(), eps);
    let expected = blq_queries(r as i64, delta);
    let mut errors = 0;
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let rank = if positive { n.min(m) } else { r };
        let a = MatQ::sample_rank(field, n, m, rank, &mut rng)?;
        let mut oracle = BilinearOracle::new(&a);
        let run = blq_rank(&mut oracle, n, m, r, eps, &mut rng)?;
        if run.queries != expected {
            rep.cost_mismatches += 1;
        }
        if run.sketch != run.x.mul(&a)?.mul(&run.y)? {
            rep.exact_violations += 1;
        }
        rep.max_bits = rep.max_bits.max(run.queries);
        let truth = if positive { 1 } else { -1 };
        if run.decision != truth {
            errors += 1;
        }
    }
    rep.reports.push(ErrorReport::proportion("error", errors, trials, Some(eps), Relation::AtMost));
    rep.note("queries", format!("{expected}"));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Symmetrization.

/// A t-party protocol over matrices whose output depends on the sum.
pub trait MultipartyProtocol {
    fn parties(&self) -> usize;
    fn run(&self, inputs: &[MatQ], rng: &mut RngStream) -> Result<Transcript>;
    /// Worst-case cost.
    fn cost(&self) -> u64;
}

/// The sketch protocol deciding rk(ΣA_i) ≤ r (R = r+1), output ±1.
#[derive(Debug, Clone)]
pub struct SketchThreshold {
    pub t: usize,
    pub r: usize,
    pub eps: f64,
    pub q: u32,
}

impl MultipartyProtocol for SketchThreshold {
    fn parties(&self) -> usize {
        self.t
    }
    fn run(&self, inputs: &[MatQ], rng: &mut RngStream) -> Result<Transcript> {
        let mut tr = rank_sketch_protocol(inputs, self.r + 1, self.eps, rng)?;
        tr.output = if tr.output as usize <= self.r { -1 } else { 1 };
        Ok(tr)
    }
    fn cost(&self) -> u64 {
        sketch_cost(self.t as u64, self.r as i64 + 1, sketch_delta(self.q, self.eps), self.q)
    }
}

#[derive(Debug, Clone)]
pub struct SymmetrizedRun {
    pub output: i64,
    /// C(x, i) + C(x, j).
    pub bits: u64,
    pub truncated: bool,
    pub positions: (usize, usize),
    pub inner: Transcript,
}

/// Two-party simulation of a t-party protocol: Alice holds a, Bob holds b.
pub fn symmetrize(proto: &dyn MultipartyProtocol, a: &MatQ, b: &MatQ, rng: &mut RngStream) -> Result<SymmetrizedRun> {
    let t = proto.parties();
    require(t >= 2, "t >= 2")?;
    let field = a.field().clone();
    let mut x: Vec<MatQ> = (0..t - 1).map(|_| MatQ::sample_uniform(&field, a.rows(), a.cols(), rng)).collect();
    let mut last = MatQ::zeros(&field, a.rows(), a.cols());
    for v in &x {
        last = last.sub(v)?;
    }
    x.push(last);
    let (i, j) = rng.pair_below(t as u64);
    let (i, j) = (i as usize, j as usize);
    x[i] = x[i].add(a)?;
    x[j] = x[j].add(b)?;
    let inner = proto.run(&x, rng)?;
    let bits = inner.per_party[i] + inner.per_party[j];
    let cap = proto.cost() * 12 / t as u64;
    let truncated = bits > cap;
    let output = if truncated { rng.sign() as i64 } else { inner.output };
    Ok(SymmetrizedRun { output, bits: bits.min(cap), truncated, positions: (i, j), inner })
}

pub fn simulate_symmetrize(field: &Field, n: usize, m: usize, r: usize, t: usize, eps: f64, trials: u64, seed: u64) -> Result<SimReport> {
    require(t >= 2, "t >= 2")?;
    require(r < n.min(m), "r < min{n,m}")?;
    let proto = SketchThreshold { t, r, eps, q: field.q() };
    let master = RngStream::new(seed);
    let mut rep = SimReport::new("symmetrize", trials, seed);
    let mut bits = Acc::default();
    let mut totals = Acc::default();
    let (mut sym_err, mut direct_err, mut truncated) = (0, 0, 0);
    for i in 0..trials {
        let mut rng = master.split(i);
        let positive = rng.coin();
        let rank = if positive { r + 1 } else { r };
        let (a, b) = rank_instance(field, n, m, rank, &mut rng)?;
        let run = symmetrize(&proto, &a, &b, &mut rng)?;
        rep.record(&run.inner);
        bits.push(run.bits as f64);
        totals.push(run.inner.bits_written as f64);
        if run.truncated {
            truncated += 1;
        }
        let truth = if positive { 1 } else { -1 };
        if run.output != truth {
            sym_err += 1;
        }
        let parts = rank_instance_multi(field, n, m, rank, t, &mut rng)?;
        if proto.run(&parts, &mut rng)?.output != truth {
            direct_err += 1;
        }
    }
    let expected = 2.0 / t as f64 * (totals.sum / totals.n.max(1) as f64);
    rep.reports.push(bits.report("two_party_bits", Some(expected), Relation::Matches));
    rep.reports.push(ErrorReport::exact("two_over_t_cost", 2.0 * proto.cost() as f64 / t as f64, None, Relation::Info));
    let se = ErrorReport::proportion("simulation_error", sym_err, trials, Some(eps), Relation::AtMost);
    let de = ErrorReport::proportion("direct_error", direct_err, trials, Some(eps), Relation::AtMost);
    // Paired comparison: the two error rates agree within the combined interval.
    let agree = libm::fabs(se.empirical - de.empirical) <= se.half_width + de.half_width + 1.0 / trials.max(1) as f64;
    if !agree {
        rep.exact_violations += 1;
    }
    rep.reports.push(se);
    rep.reports.push(de);
    rep.reports.push(ErrorReport::proportion("truncated", truncated, trials, Some(1.0 / 6.0), Relation::AtMost));
    rep.note("truncation_cap", format!("{}", proto.cost() * 12 / t as u64));
    Ok(rep)
}
