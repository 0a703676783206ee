//! Text formats accepted on the command line.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rankcc_core::gf::{field_make_capped, parse_poly, poly_to_string, prime_power, DEFAULT_Q_CAP};
use rankcc_core::{BigRat, Error, Field, MatQ, Result};

fn bad(what: &str, s: &str) -> Error {
    Error::Precondition(format!("cannot parse {what} '{s}'"))
}

/// "p/q", an integer, or a finite decimal such as "0.25" or "-1.5".
pub fn parse_rational(s: &str) -> Result<BigRat> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad("rational", s))?;
        let d: BigInt = b.trim().parse().map_err(|_| bad("rational", s))?;
        if d.is_zero() {
            return Err(Error::Precondition(format!("denominator of '{s}' must be nonzero")));
        }
        return Ok(BigRat::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("rational", s));
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| bad("rational", s))? };
        let frac: BigInt = fp.parse().map_err(|_| bad("rational", s))?;
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        let v = BigRat::new(whole * &den + frac, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad("rational", s))?;
    Ok(BigRat::from_integer(n))
}

/// Reduced "p/q", or "p" for integers.
pub fn format_rational(x: &BigRat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A field from `--q` (either "9" or "q=9,mod=x^2+1") and an optional `--mod`.
pub fn parse_field(q: &str, modulus: Option<&str>) -> Result<Field> {
    let mut q_part = q.trim().to_string();
    let mut mod_part = modulus.map(|m| m.trim().to_string());
    if q_part.contains('=') {
        for item in q.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(|| bad("field", q))?;
            match k.trim() {
                "q" => q_part = v.trim().to_string(),
                "mod" => {
                    if mod_part.is_some() {
                        return Err(Error::Precondition("modulus given twice".into()));
                    }
                    mod_part = Some(v.trim().to_string());
                }
                _ => return Err(bad("field", q)),
            }
        }
    }
    let qv: u32 = q_part.parse().map_err(|_| bad("field order", &q_part))?;
    let (p, k) = prime_power(qv).ok_or_else(|| Error::Precondition(format!("q = {qv} must be a prime power")))?;
    let coeffs = match &mod_part {
        Some(m) => Some(parse_poly(m, p)?),
        None => None,
    };
    field_make_capped(p, k, coeffs.as_deref(), DEFAULT_Q_CAP)
}

/// (q, modulus) in canonical text form.
pub fn field_canonical(f: &Field) -> (String, Option<String>) {
    (f.q().to_string(), f.modulus().map(poly_to_string))
}

/// `q=2;2x2;[1 0 / 1 1]`: field, shape, then rows separated by '/'.
/// Entries are element indices in 0..q.
pub fn parse_matrix(s: &str) -> Result<MatQ> {
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad("matrix", s));
    }
    let field = parse_field(parts[0], None)?;
    let (r, c) = parts[1].split_once('x').ok_or_else(|| bad("matrix shape", parts[1]))?;
    let rows: usize = r.trim().parse().map_err(|_| bad("matrix shape", parts[1]))?;
    let cols: usize = c.trim().parse().map_err(|_| bad("matrix shape", parts[1]))?;
    let body = parts[2].strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| bad("matrix body", parts[2]))?;
    let row_texts: Vec<&str> = if body.trim().is_empty() { Vec::new() } else { body.split('/').collect() };
    if row_texts.len() != rows {
        return Err(Error::Shape(format!("declared {rows} rows, found {}", row_texts.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for rt in row_texts {
        let entries: Vec<&str> = rt.split_whitespace().collect();
        if entries.len() != cols {
            return Err(Error::Shape(format!("declared {cols} columns, found a row with {}", entries.len())));
        }
        for e in entries {
            let v: u32 = e.parse().map_err(|_| bad("matrix entry", e))?;
            if v >= field.q() {
                return Err(Error::Precondition(format!("matrix entry {v} must be < q = {}", field.q())));
            }
            data.push(v);
        }
    }
    MatQ::from_data(&field, rows, cols, data)
}

/// Inverse of [`parse_matrix`].
pub fn format_matrix(m: &MatQ) -> String {
    let f = m.field();
    let head = match f.modulus() {
        Some(md) => format!("q={},mod={}", f.q(), poly_to_string(md)),
        None => format!("q={}", f.q()),
    };
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{head};{}x{};[{}]", m.rows(), m.cols(), rows.join(" / "))
}

/// Weight vector: `indicator:r` or a comma-separated list of rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpec {
    Indicator(usize),
    List(Vec<BigRat>),
}

pub fn parse_phi(s: &str) -> Result<PhiSpec> {
    let t = s.trim();
    if let Some(r) = t.strip_prefix("indicator:") {
        return Ok(PhiSpec::Indicator(r.trim().parse().map_err(|_| bad("phi", s))?));
    }
    let vals = t.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    if vals.is_empty() {
        return Err(bad("phi", s));
    }
    Ok(PhiSpec::List(vals))
}

impl PhiSpec {
    pub fn canonical(&self) -> String {
        match self {
            PhiSpec::Indicator(r) => format!("indicator:{r}"),
            PhiSpec::List(v) => v.iter().map(format_rational).collect::<Vec<_>>().join(","),
        }
    }

    /// Values on 0..=top; entries past the list are zero, nonzero entries
    /// past `top` are rejected.
    pub fn values(&self, top: usize) -> Result<Vec<BigRat>> {
        match self {
            PhiSpec::Indicator(r) => {
                if *r > top {
                    return Err(Error::Precondition(format!("indicator index {r} <= {top}")));
                }
                Ok((0..=top).map(|i| if i == *r { BigRat::one() } else { BigRat::zero() }).collect())
            }
            PhiSpec::List(v) => {
                if v.iter().skip(top + 1).any(|x| !x.is_zero()) {
                    return Err(Error::Precondition(format!("phi has nonzero entries past index {top}")));
                }
                Ok((0..=top).map(|i| v.get(i).cloned().unwrap_or_else(BigRat::zero)).collect())
            }
        }
    }
}

/// Nonnegative probability-like rational as f64, with 0 < x <= hi.
pub fn positive_at_most(x: &BigRat, hi: &BigRat, name: &str) -> Result<f64> {
    if !x.is_positive() || x > hi {
        return Err(Error::Precondition(format!("0 < {name} <= {}", format_rational(hi))));
    }
    Ok(rankcc_core::qcomb::rat_to_f64(x))
}
