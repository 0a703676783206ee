//! JSON and CSV rendering of command results.

use num_bigint::BigInt;
use rankcc_core::protocols::{ErrorReport, Relation, SimReport};
use rankcc_core::spectrum::{ExactValue, SpectrumReport, SpectrumSource};
use rankcc_core::BigRat;
use serde_json::{json, Map, Value};

use crate::parse::format_rational;

pub fn rat(x: &BigRat) -> Value {
    Value::String(format_rational(x))
}

pub fn rats(v: &[BigRat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Finite floats as numbers; infinities and NaN as strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

pub fn exact(v: &ExactValue) -> Value {
    match v {
        ExactValue::Rational(r) => rat(r),
        ExactValue::Sqrt(r) => Value::String(format!("sqrt({})", format_rational(r))),
    }
}

pub fn spectrum(s: &SpectrumReport) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("value".into(), num(e.value));
            if let Some(x) = &e.exact {
                m.insert("exact".into(), exact(x));
            }
            m.insert("multiplicity".into(), big(&e.multiplicity));
            Value::Object(m)
        })
        .collect();
    json!({
        "source": match s.source { SpectrumSource::ClosedForm => "closed_form", SpectrumSource::Numeric => "numeric" },
        "total_dim": big(&s.total_dim),
        "entries": entries,
    })
}

fn relation(r: Relation) -> &'static str {
    match r {
        Relation::AtMost => "at_most",
        Relation::AtLeast => "at_least",
        Relation::Matches => "matches",
        Relation::Info => "info",
    }
}

pub fn error_report(e: &ErrorReport) -> Value {
    json!({
        "name": e.name,
        "trials": e.trials,
        "empirical": num(e.empirical),
        "ci_half_width": num(e.half_width),
        "bound": e.bound.map(num).unwrap_or(Value::Null),
        "relation": relation(e.relation),
        "pass": e.pass(),
    })
}

pub fn sim_report(r: &SimReport) -> Value {
    let notes: Map<String, Value> = r.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "protocol": r.protocol,
        "trials": r.trials,
        "reports": r.reports.iter().map(error_report).collect::<Vec<_>>(),
        "cost_mismatches": r.cost_mismatches,
        "max_cost": r.max_bits,
        "exact_violations": r.exact_violations,
        "notes": notes,
        "pass": r.pass(),
    })
}

/// Flattens nested objects and arrays into (path, scalar text) pairs.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn write_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Generic CSV: one (path, value) row per scalar of the report.
pub fn to_csv(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let rows: Vec<Vec<String>> = rows.into_iter().map(|(a, b)| vec![a, b]).collect();
    write_csv(&["path", "value"], &rows)
}

/// Simulation CSV: one row per statistic.
pub fn sim_csv(argv: &str, r: &SimReport) -> String {
    let f = |x: f64| num(x).to_string().trim_matches('"').to_string();
    let rows: Vec<Vec<String>> = r
        .reports
        .iter()
        .map(|e| {
            vec![
                r.protocol.clone(),
                argv.to_string(),
                e.name.clone(),
                e.trials.to_string(),
                f(e.empirical),
                e.bound.map(f).unwrap_or_default(),
                f(e.half_width),
                relation(e.relation).to_string(),
                e.pass().to_string(),
            ]
        })
        .collect();
    write_csv(&["protocol", "params", "statistic", "trials", "empirical", "bound", "ci", "relation", "pass"], &rows)
}
