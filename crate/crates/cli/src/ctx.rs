//! Flag resolution. Every flag a command reads is recorded in canonical
//! text form; the recorded set becomes the report's argv.

use std::collections::{BTreeMap, BTreeSet};

use rankcc_core::{BigRat, Error, Field, Result};

use crate::parse::{field_canonical, format_rational, parse_field, parse_phi, parse_rational, PhiSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub struct Ctx {
    supplied: BTreeMap<String, String>,
    consumed: BTreeSet<String>,
    pub canonical: BTreeMap<String, String>,
}

impl Ctx {
    pub fn new(supplied: BTreeMap<String, String>) -> Ctx {
        Ctx { supplied, consumed: BTreeSet::new(), canonical: BTreeMap::new() }
    }

    fn raw(&mut self, name: &str) -> Option<String> {
        self.consumed.insert(name.to_string());
        self.supplied.get(name).cloned()
    }

    fn record(&mut self, name: &str, v: String) {
        self.canonical.insert(name.to_string(), v);
    }

    pub fn has(&self, name: &str) -> bool {
        self.supplied.contains_key(name)
    }

    pub fn int(&mut self, name: &str, default: Option<i64>) -> Result<i64> {
        let v = match self.raw(name) {
            Some(s) => s.trim().parse::<i64>().map_err(|_| Error::Precondition(format!("--{name} must be an integer, got '{s}'")))?,
            None => default.ok_or_else(|| Error::Precondition(format!("--{name} is required")))?,
        };
        self.record(name, v.to_string());
        Ok(v)
    }

    pub fn opt_int(&mut self, name: &str) -> Result<Option<i64>> {
        if self.has(name) {
            self.int(name, None).map(Some)
        } else {
            self.consumed.insert(name.to_string());
            Ok(None)
        }
    }

    pub fn nonneg(&mut self, name: &str, default: Option<i64>) -> Result<usize> {
        let v = self.int(name, default)?;
        if v < 0 {
            return Err(Error::Precondition(format!("{name} >= 0")));
        }
        Ok(v as usize)
    }

    pub fn u64(&mut self, name: &str, default: u64) -> Result<u64> {
        let v = match self.raw(name) {
            Some(s) => s.trim().parse::<u64>().map_err(|_| Error::Precondition(format!("--{name} must be a nonnegative integer, got '{s}'")))?,
            None => default,
        };
        self.record(name, v.to_string());
        Ok(v)
    }

    pub fn rational(&mut self, name: &str, default: Option<&str>) -> Result<BigRat> {
        let s = match self.raw(name) {
            Some(s) => s,
            None => default.ok_or_else(|| Error::Precondition(format!("--{name} is required")))?.to_string(),
        };
        let v = parse_rational(&s)?;
        self.record(name, format_rational(&v));
        Ok(v)
    }

    pub fn text(&mut self, name: &str) -> Result<String> {
        self.raw(name).ok_or_else(|| Error::Precondition(format!("--{name} is required")))
    }

    pub fn string(&mut self, name: &str, default: &str, allowed: &[&str]) -> Result<String> {
        let v = self.raw(name).unwrap_or_else(|| default.to_string());
        if !allowed.contains(&v.as_str()) {
            return Err(Error::Precondition(format!("--{name} must be one of {}", allowed.join("|"))));
        }
        self.record(name, v.clone());
        Ok(v)
    }

    pub fn field(&mut self, default_q: Option<u32>) -> Result<Field> {
        let q = match self.raw("q") {
            Some(q) => q,
            None => default_q.ok_or_else(|| Error::Precondition("--q is required".into()))?.to_string(),
        };
        let m = self.raw("mod");
        let f = parse_field(&q, m.as_deref())?;
        let (qs, ms) = field_canonical(&f);
        self.record("q", qs);
        if let Some(ms) = ms {
            self.record("mod", ms);
        }
        Ok(f)
    }

    pub fn phi(&mut self, default: &str) -> Result<PhiSpec> {
        let s = self.raw("phi").unwrap_or_else(|| default.to_string());
        let p = parse_phi(&s)?;
        self.record("phi", p.canonical());
        Ok(p)
    }

    pub fn format(&mut self) -> Result<Format> {
        Ok(match self.string("format", "json", &["json", "csv"])?.as_str() {
            "csv" => Format::Csv,
            _ => Format::Json,
        })
    }

    pub fn cap(&mut self, default: u64) -> Result<u128> {
        Ok(self.u64("cap", default)? as u128)
    }

    /// Flags given on the command line that the command never read.
    pub fn unused(&self) -> Vec<String> {
        self.supplied.keys().filter(|k| !self.consumed.contains(*k)).cloned().collect()
    }

    pub fn argv(&self, path: &[String]) -> Vec<String> {
        let mut v = vec![String::from("rankcc")];
        v.extend(path.iter().cloned());
        for (k, val) in &self.canonical {
            v.push(format!("--{k}"));
            v.push(val.clone());
        }
        v
    }
}

pub fn as_q(f: &Field) -> u64 {
    f.q() as u64
}
