//! Polynomial certificate text format.
//!
//! A single JSON object: `vars` (always 2), `analytic` (always true here) and
//! `terms`, a list of `{ "e": ["<m1>", "<m2>"], "c": [re, im] }` in canonical
//! order. Exponents are decimal strings; coefficients use shortest
//! round-trip float text, so a write/read cycle is bit-exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{ExpPair, SparsePoly};
use crate::dyadic::parse_decimal;
use crate::error::{Error, Result};
use crate::fields::{get, unknown_keys};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub e: [String; 2],
    pub c: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyCertificate {
    pub vars: u32,
    pub analytic: bool,
    pub terms: Vec<TermRecord>,
}

impl PolyCertificate {
    pub fn from_poly(p: &SparsePoly) -> Self {
        PolyCertificate {
            vars: 2,
            analytic: true,
            terms: p
                .terms()
                .map(|(e, c)| TermRecord {
                    e: [e.m1.to_string(), e.m2.to_string()],
                    c: [c.re, c.im],
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SparsePoly> {
        if self.vars != 2 {
            return Err(Error::Parse(format!("vars must be 2, got {}", self.vars)));
        }
        if !self.analytic {
            return Err(Error::Parse(
                "non-analytic certificates are not supported".into(),
            ));
        }
        let mut p = SparsePoly::new();
        for (i, t) in self.terms.iter().enumerate() {
            let m1 = parse_decimal(&t.e[0]);
            let m2 = parse_decimal(&t.e[1]);
            let (Some(m1), Some(m2)) = (m1, m2) else {
                return Err(Error::Parse(format!(
                    "term {i}: exponents must be nonnegative decimal strings"
                )));
            };
            let [re, im] = t.c;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("term {i}: coefficient is not finite")));
            }
            if re == 0.0 && im == 0.0 {
                return Err(Error::Parse(format!("term {i}: zero coefficient")));
            }
            let e = ExpPair { m1, m2 };
            if p.get(&e).is_some() {
                return Err(Error::Parse(format!("term {i}: duplicate exponent {e}")));
            }
            p.insert(e, Complex64::new(re, im));
        }
        Ok(p)
    }

    /// Parses a JSON value, recording unknown keys as warnings.
    pub fn from_value(v: &Value, path: &str, warnings: &mut Vec<String>) -> Result<Self> {
        unknown_keys(v, &["vars", "analytic", "terms"], path, warnings);
        if let Some(Value::Array(ts)) = get(v, "terms") {
            for (i, t) in ts.iter().enumerate() {
                unknown_keys(t, &["e", "c"], &format!("{path}.terms[{i}]"), warnings);
            }
        }
        Ok(serde_json::from_value(v.clone())?)
    }
}

impl SparsePoly {
    pub fn to_certificate_json(&self) -> String {
        serde_json::to_string_pretty(&PolyCertificate::from_poly(self))
            .expect("certificate serializes")
    }

    /// Reads a certificate; returns the polynomial and any unknown-field warnings.
    pub fn from_certificate_json(text: &str) -> Result<(SparsePoly, Vec<String>)> {
        let v: Value = serde_json::from_str(text)?;
        let mut warnings = Vec::new();
        let cert = PolyCertificate::from_value(&v, "", &mut warnings)?;
        Ok((cert.to_poly()?, warnings))
    }
}
