//! Library behind the `rankcc` binary: argument parsing, command dispatch
//! and report rendering. [`run`] is the whole program minus process I/O.

pub mod commands;
pub mod ctx;
pub mod parse;
pub mod report;
pub mod verify;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use rankcc_core::Error;
use serde_json::{json, Map, Value};

use crate::ctx::{Ctx, Format};

#[derive(Parser, Debug)]
#[command(name = "rankcc", version, about = "Exact tools for rank, determinant and subspace communication problems")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

/// Every flag is taken as text and parsed by the command that reads it.
#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// Field order, or a full designation such as "q=9,mod=x^2+1".
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Irreducible modulus for extension fields, e.g. "x^2+1".
    #[arg(long = "mod", allow_hyphen_values = true)]
    pub modulus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long = "R", allow_hyphen_values = true)]
    pub big_r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d2: Option<String>,
    /// Sum dimension d of the sum problem.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Sum dimension D of the sum problem.
    #[arg(long = "D", allow_hyphen_values = true)]
    pub big_d: Option<String>,
    /// Approximation parameter δ (rational).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Advantage γ (rational).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Error probability ε (rational).
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Constant c of the intersection bound (rational).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Weight vector: "indicator:r" or "w0,w1,..." (rationals).
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Matrix literal such as "q=2;2x2;[1 0 / 1 1]".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub trials: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub passes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub variant: Option<String>,
    /// json or csv.
    #[arg(long, allow_hyphen_values = true)]
    pub format: Option<String>,
    /// Size guard for enumerations and dense builds.
    #[arg(long, allow_hyphen_values = true)]
    pub cap: Option<String>,
}

impl Flags {
    fn into_map(self) -> BTreeMap<String, String> {
        let pairs = [
            ("q", self.q),
            ("mod", self.modulus),
            ("n", self.n),
            ("m", self.m),
            ("l", self.l),
            ("k", self.k),
            ("r", self.r),
            ("R", self.big_r),
            ("s", self.s),
            ("t", self.t),
            ("d1", self.d1),
            ("d2", self.d2),
            ("d", self.d),
            ("D", self.big_d),
            ("delta", self.delta),
            ("gamma", self.gamma),
            ("eps", self.eps),
            ("c", self.c),
            ("u", self.u),
            ("v", self.v),
            ("a", self.a),
            ("b", self.b),
            ("phi", self.phi),
            ("matrix", self.matrix),
            ("trials", self.trials),
            ("seed", self.seed),
            ("passes", self.passes),
            ("variant", self.variant),
            ("format", self.format),
            ("cap", self.cap),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).collect()
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Table of Γ_n(s,t).
    Gamma(Flags),
    /// Quadrant rank probabilities P_n(s,t,r).
    Pn(Flags),
    /// Gaussian binomial coefficients.
    Qbinom(Flags),
    /// Number of n×m matrices of each rank.
    CountRank(Flags),
    /// Λ_r^{n,m,ℓ}(k) table.
    Lambda(Flags),
    /// Rank, determinant and kernel of a matrix literal.
    Matrix(Flags),
    #[command(subcommand)]
    Witness(WitnessCmd),
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    #[command(subcommand)]
    Bound(BoundCmd),
    #[command(subcommand)]
    Simulate(SimulateCmd),
    /// Run the invariant suite for one module or all of them.
    Verify {
        #[arg(default_value = "all")]
        scope: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    Rank(Flags),
    Det(Flags),
    Rankdet(Flags),
    Subspace(Flags),
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    EPhi(Flags),
    J(Flags),
}

#[derive(Subcommand, Debug)]
pub enum BoundCmd {
    Rank(Flags),
    Det(Flags),
    Rankdet(Flags),
    Intersect(Flags),
    Sum(Flags),
}

#[derive(Subcommand, Debug)]
pub enum SimulateCmd {
    RankSketch(Flags),
    TwoBit(Flags),
    IntersectSmall(Flags),
    IntersectLarge(Flags),
    Streaming(Flags),
    Blq(Flags),
    Symmetrize(Flags),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command hands back for rendering.
#[derive(Default)]
pub struct CmdOutput {
    pub values: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub seed: Option<u64>,
    /// Set by commands whose exit code depends on the outcome.
    pub pass: Option<bool>,
    pub sim: Option<rankcc_core::protocols::SimReport>,
}

pub fn tolerance(value: f64, source: &str) -> Value {
    json!({ "value": report::num(value), "source": source })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::DivisionByZero => 1,
        _ => 2,
    }
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (path, flags, scope) = split(cli.cmd);
    let mut ctx = Ctx::new(flags.into_map());
    let format = match ctx.format() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let result = commands::dispatch(&path, scope.as_deref(), &mut ctx);
    let out = match result {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let unused = ctx.unused();
    if !unused.is_empty() {
        let e = Error::Precondition(format!("flags not used by '{}': --{}", path.join(" "), unused.join(", --")));
        return fail(&e);
    }
    let mut path_full = path.clone();
    if let Some(s) = &scope {
        path_full.push(s.clone());
    }
    let argv = ctx.argv(&path_full);
    let params: Map<String, Value> =
        ctx.canonical.iter().filter(|(k, _)| k.as_str() != "format").map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let mut doc = Map::new();
    doc.insert("command".into(), Value::String(path_full.join(" ")));
    doc.insert("config".into(), json!({ "argv": argv, "format": if format == Format::Csv { "csv" } else { "json" } }));
    doc.insert("params".into(), Value::Object(params));
    doc.insert("values".into(), Value::Object(out.values));
    doc.insert("tolerances".into(), Value::Object(out.tolerances));
    doc.insert("seed".into(), out.seed.map(Value::from).unwrap_or(Value::Null));
    doc.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    if let Some(p) = out.pass {
        doc.insert("pass".into(), Value::Bool(p));
    }
    let doc = Value::Object(doc);
    let stdout = match (format, &out.sim) {
        (Format::Json, _) => serde_json::to_string_pretty(&doc).expect("serializable report") + "\n",
        (Format::Csv, Some(sim)) => report::sim_csv(&argv.join(" "), sim),
        (Format::Csv, None) => report::to_csv(&doc),
    };
    let code = if out.pass == Some(false) { 1 } else { 0 };
    Outcome { code, stdout, stderr: String::new() }
}

fn fail(e: &Error) -> Outcome {
    Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("rankcc: {e}\n") }
}

fn split(cmd: Cmd) -> (Vec<String>, Flags, Option<String>) {
    let p = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match cmd {
        Cmd::Gamma(f) => (p(&["gamma"]), f, None),
        Cmd::Pn(f) => (p(&["pn"]), f, None),
        Cmd::Qbinom(f) => (p(&["qbinom"]), f, None),
        Cmd::CountRank(f) => (p(&["count-rank"]), f, None),
        Cmd::Lambda(f) => (p(&["lambda"]), f, None),
        Cmd::Matrix(f) => (p(&["matrix"]), f, None),
        Cmd::Witness(w) => match w {
            WitnessCmd::Rank(f) => (p(&["witness", "rank"]), f, None),
            WitnessCmd::Det(f) => (p(&["witness", "det"]), f, None),
            WitnessCmd::Rankdet(f) => (p(&["witness", "rankdet"]), f, None),
            WitnessCmd::Subspace(f) => (p(&["witness", "subspace"]), f, None),
        },
        Cmd::Spectrum(s) => match s {
            SpectrumCmd::EPhi(f) => (p(&["spectrum", "e-phi"]), f, None),
            SpectrumCmd::J(f) => (p(&["spectrum", "j"]), f, None),
        },
        Cmd::Bound(b) => match b {
            BoundCmd::Rank(f) => (p(&["bound", "rank"]), f, None),
            BoundCmd::Det(f) => (p(&["bound", "det"]), f, None),
            BoundCmd::Rankdet(f) => (p(&["bound", "rankdet"]), f, None),
            BoundCmd::Intersect(f) => (p(&["bound", "intersect"]), f, None),
            BoundCmd::Sum(f) => (p(&["bound", "sum"]), f, None),
        },
        Cmd::Simulate(s) => match s {
            SimulateCmd::RankSketch(f) => (p(&["simulate", "rank-sketch"]), f, None),
            SimulateCmd::TwoBit(f) => (p(&["simulate", "two-bit"]), f, None),
            SimulateCmd::IntersectSmall(f) => (p(&["simulate", "intersect-small"]), f, None),
            SimulateCmd::IntersectLarge(f) => (p(&["simulate", "intersect-large"]), f, None),
            SimulateCmd::Streaming(f) => (p(&["simulate", "streaming"]), f, None),
            SimulateCmd::Blq(f) => (p(&["simulate", "blq"]), f, None),
            SimulateCmd::Symmetrize(f) => (p(&["simulate", "symmetrize"]), f, None),
        },
        Cmd::Verify { scope, flags } => (p(&["verify"]), flags, Some(scope)),
    }
}
