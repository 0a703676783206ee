use std::process::Command;

use proptest::prelude::*;
use rankcc_cli::parse::{format_matrix, format_rational, parse_field, parse_matrix, parse_phi, parse_rational, PhiSpec};
use rankcc_cli::run;
use rankcc_core::BigRat;
use serde_json::Value;

fn rankcc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rankcc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = rankcc(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn replay(args: &[&str]) {
    let (code, out, _) = rankcc(args);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let argv: Vec<String> = doc["config"]["argv"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    assert_eq!(argv[0], "rankcc");
    let argv_ref: Vec<&str> = argv[1..].iter().map(String::as_str).collect();
    let (code2, out2, _) = rankcc(&argv_ref);
    assert_eq!(code, code2);
    assert_eq!(out, out2, "replay of {argv:?} differs");
}

#[test]
fn gamma_example() {
    let d = json(&["gamma", "--q", "2", "--n", "2"]);
    assert_eq!(d["values"]["gamma_full"], serde_json::json!(["1", "-1/3", "1/3"]));
    assert_eq!(d["params"]["q"], "2");
}

#[test]
fn subspace_spectrum_example() {
    let d = json(&["spectrum", "j", "--q", "2", "--n", "4", "--m", "2", "--l", "2", "--phi", "indicator:0"]);
    let entries = d["values"]["eigen"]["entries"].as_array().unwrap();
    let mut got: Vec<(String, String)> =
        entries.iter().map(|e| (e["exact"].as_str().unwrap().to_string(), e["multiplicity"].as_str().unwrap().to_string())).collect();
    got.sort();
    let want = [("-4", "14"), ("16", "1"), ("2", "20")];
    assert_eq!(got, want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>());
    assert_eq!(d["values"]["frobenius_sq"], "560");
}

#[test]
fn intersect_bound_example() {
    let d = json(&["bound", "intersect", "--R", "3", "--m", "3", "--l", "3", "--n", "6", "--r", "0", "--gamma", "1/3", "--q", "2"]);
    assert_eq!(d["values"]["bits"].as_f64(), Some(1.0));
    assert_eq!(d["values"]["trivial"], true);
}

#[test]
fn qbinom_and_count_rank() {
    let d = json(&["qbinom", "--q", "2", "--n", "4", "--k", "2"]);
    assert_eq!(d["values"]["value"], "35");
    let d = json(&["qbinom", "--q", "3", "--n", "3"]);
    assert_eq!(d["values"]["row"], serde_json::json!(["1", "13", "13", "1"]));
    let d = json(&["count-rank", "--q", "2", "--n", "2", "--m", "2", "--r", "2"]);
    assert_eq!(d["values"]["value"], "6");
}

#[test]
fn exit_code_zero_one_two() {
    let (c, _, _) = rankcc(&["gamma", "--q", "3", "--n", "1"]);
    assert_eq!(c, 0);
    // The inequality is named in the message.
    let (c, _, err) = rankcc(&["bound", "intersect", "--R", "1", "--m", "3", "--l", "3", "--n", "6", "--r", "2", "--gamma", "1/3", "--q", "2"]);
    assert_eq!(c, 2);
    assert!(err.contains("<="), "{err}");
    let (c, _, _) = rankcc(&["gamma", "--q", "6", "--n", "2"]);
    assert_eq!(c, 2);
    let (c, _, _) = rankcc(&["gamma", "--q", "2", "--n", "2", "--eps", "1/4"]);
    assert_eq!(c, 2, "unused flags are rejected");
    let (c, _, _) = rankcc(&["no-such-command"]);
    assert_eq!(c, 2);
    let (c, _, _) = rankcc(&["verify", "nowhere"]);
    assert_eq!(c, 2);
}

#[test]
fn exit_one_on_internal_failure() {
    use rankcc_core::Error;
    assert_eq!(rankcc_cli::exit_code(&Error::Internal("x".into())), 1);
    assert_eq!(rankcc_cli::exit_code(&Error::DivisionByZero), 1);
    assert_eq!(rankcc_cli::exit_code(&Error::Precondition("a <= b".into())), 2);
    let o = run(["rankcc", "verify", "gf", "--seed", "3"]);
    assert_eq!(o.code, 0);
    let d: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(d["pass"], true);
}

#[test]
fn replay_reproduces_output() {
    replay(&["gamma", "--q", "3", "--n", "2"]);
    replay(&["pn", "--q", "2", "--n", "3"]);
    replay(&["witness", "det", "--q", "3", "--n", "2"]);
    replay(&["spectrum", "e-phi", "--q", "2", "--n", "2", "--k", "1"]);
    replay(&["bound", "sum", "--q", "2", "--n", "6", "--m", "3", "--l", "3", "--d", "5", "--D", "4", "--gamma", "1/3"]);
    replay(&["simulate", "rank-sketch", "--n", "5", "--r", "1", "--R", "3", "--trials", "100", "--seed", "9"]);
    replay(&["simulate", "symmetrize", "--n", "4", "--r", "1", "--t", "3", "--trials", "60"]);
    replay(&["witness", "rank", "--q", "q=9,mod=x^2+1", "--n", "2", "--k", "1"]);
}

#[test]
fn csv_output() {
    let (c, out, _) = rankcc(&["simulate", "two-bit", "--n", "3", "--r", "1", "--trials", "100", "--format", "csv"]);
    assert_eq!(c, 0);
    assert!(out.starts_with("protocol,params,statistic,trials,empirical,bound,ci,relation,pass\n"));
    let (c, out, _) = rankcc(&["gamma", "--q", "2", "--n", "1", "--format", "csv"]);
    assert_eq!(c, 0);
    assert!(out.starts_with("path,value\n"));
    assert!(out.contains("values.gamma_full[1],-1"));
}

#[test]
fn verify_is_deterministic() {
    let a = run(["rankcc", "verify", "protocols", "--seed", "11"]);
    let b = run(["rankcc", "verify", "protocols", "--seed", "11"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("6/-4").unwrap(), BigRat::new((-3).into(), 2.into()));
    assert_eq!(parse_rational("0.25").unwrap(), BigRat::new(1.into(), 4.into()));
    assert_eq!(parse_rational("-1.5").unwrap(), BigRat::new((-3).into(), 2.into()));
    assert_eq!(parse_rational(" 7 ").unwrap(), BigRat::from_integer(7.into()));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    assert!(parse_rational("1.").is_err());
}

#[test]
fn field_parsing() {
    assert_eq!(parse_field("q=9,mod=x^2+1", None).unwrap().q(), 9);
    assert_eq!(parse_field("9", Some("x^2+1")).unwrap().q(), 9);
    assert_eq!(parse_field("8", None).unwrap().q(), 8);
    assert!(parse_field("q=9,mod=x^2+2x+1", None).is_err());
    assert!(parse_field("12", None).is_err());
    assert!(parse_field("q=9,mod=x^2+1", Some("x^2+1")).is_err());
}

#[test]
fn matrix_parsing() {
    let m = parse_matrix("q=2;2x2;[1 0 / 1 1]").unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(format_matrix(&m), "q=2;2x2;[1 0 / 1 1]");
    assert!(parse_matrix("q=2;2x2;[1 0 / 1 2]").is_err());
    assert!(parse_matrix("q=2;2x3;[1 0 / 1 1]").is_err());
    assert!(parse_matrix("q=2;3x2;[1 0 / 1 1]").is_err());
    let m = parse_matrix("q=9,mod=x^2+1;1x2;[8 3]").unwrap();
    assert_eq!(format_matrix(&m), "q=9,mod=x^2+1;1x2;[8 3]");
}

#[test]
fn phi_parsing() {
    assert_eq!(parse_phi("indicator:2").unwrap(), PhiSpec::Indicator(2));
    let p = parse_phi("1/2, -3/2, 1").unwrap();
    assert_eq!(p.canonical(), "1/2,-3/2,1");
    assert_eq!(p.values(3).unwrap().len(), 4);
    assert!(p.values(1).is_err());
    assert!(PhiSpec::Indicator(3).values(2).is_err());
}

proptest! {
    #[test]
    fn rational_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = BigRat::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn matrix_roundtrip(rows in 1usize..4, cols in 1usize..4, seed in any::<u64>(), q in prop::sample::select(vec![2u32, 3, 4, 5, 9])) {
        let f = rankcc_core::gf::field_from_q(q).unwrap();
        let mut rng = rankcc_core::RngStream::new(seed);
        let m = rankcc_core::MatQ::sample_uniform(&f, rows, cols, &mut rng);
        let back = parse_matrix(&format_matrix(&m)).unwrap();
        prop_assert_eq!(format_matrix(&back), format_matrix(&m));
        prop_assert_eq!(back.rank(), m.rank());
    }
}
