//! Serializable output document and text / LaTeX rendering of factored
//! characteristic polynomials. Big integers travel as decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::charpoly::Family;
use crate::error::{Error, Result};
use crate::oracle::VerificationReport;
use crate::polyalg::{FactoredCharPoly, TPoly};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    /// Coefficients of the factor in `t`, lowest degree first.
    pub poly_t: Vec<String>,
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub family: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub tool_version: String,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    /// `"factored"` or `"report"`.
    pub kind: String,
    pub k: u32,
    pub lambda_exponent: String,
    pub factors: Vec<FactorEntry>,
    pub total_degree: String,
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

impl OutputDocument {
    pub fn from_charpoly(f: &FactoredCharPoly, family: &Family) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("k".to_string(), serde_json::Value::from(f.k()));
        match family {
            Family::SingleEdge => {}
            Family::Path { n } => {
                parameters.insert("n".into(), (*n).into());
            }
            Family::Star { m } => {
                parameters.insert("m".into(), (*m).into());
            }
            Family::Starlike { arms } => {
                parameters.insert("arms".into(), arms.clone().into());
            }
        }
        OutputDocument {
            kind: "factored".into(),
            k: f.k(),
            lambda_exponent: f.lambda_exponent().to_string(),
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| FactorEntry {
                    poly_t: p.coeffs().iter().map(|c| c.to_string()).collect(),
                    exponent: e.to_string(),
                })
                .collect(),
            total_degree: f.degree().to_string(),
            metadata: Metadata {
                family: family.name().into(),
                parameters,
                tool_version: TOOL_VERSION.into(),
                notes: known_notes(family, f.k() as usize),
            },
            verification: None,
        }
    }

    /// Rebuilds the polynomial, checking that `total_degree` agrees with the fields.
    pub fn to_charpoly(&self) -> Result<FactoredCharPoly> {
        let parse = |s: &str| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::InvalidParameter(format!("not an integer: {s:?}")))
        };
        let lambda = parse(&self.lambda_exponent)?;
        let mut factors = Vec::new();
        for entry in &self.factors {
            let coeffs = entry.poly_t.iter().map(|c| parse(c)).collect::<Result<Vec<_>>>()?;
            factors.push((TPoly::from_coeffs(coeffs), parse(&entry.exponent)?));
        }
        let f = FactoredCharPoly::from_parts(self.k, lambda, factors)?;
        if f.degree() != parse(&self.total_degree)? {
            return Err(Error::InvalidParameter(format!(
                "total_degree {} disagrees with the factors ({})",
                self.total_degree,
                f.degree()
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("bad document: {e}")))
    }
}

/// Remarks attached to specific instances.
pub fn known_notes(family: &Family, k: usize) -> Vec<String> {
    match family {
        Family::Starlike { arms } if k == 3 && sorted(arms) == [1, 1, 2] => vec![
            "a previously circulated factorization of this polynomial, \
             λ^980 (λ^3−1)^75 (λ^3−2)^54 (λ^3−3)^27 (λ^4−2λ)^9 (λ^6−3λ^3+1)^54 (λ^6−4λ^3+2)^81, \
             has total degree 2294; a 9-vertex 3-uniform hypergraph has degree 9·2^8 = 2304, \
             which this result satisfies"
                .into(),
        ],
        _ => Vec::new(),
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// `λ^a` in the requested style; empty when `a = 0`.
fn lambda_power(a: &BigInt, latex: bool) -> String {
    if a.is_zero() {
        String::new()
    } else if a.is_one() {
        if latex { "\\lambda".into() } else { "λ".into() }
    } else if latex {
        format!("\\lambda^{{{a}}}")
    } else {
        format!("λ^{a}")
    }
}

/// `f(λ^k)` written out, highest power first, e.g. `λ^6−3λ^3+1`.
pub fn render_factor(p: &TPoly, k: u32, latex: bool) -> String {
    let minus = if latex { "-" } else { "−" };
    let mut out = String::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let first = out.is_empty();
        if c.is_negative() {
            out.push_str(minus);
        } else if !first {
            out.push('+');
        }
        let mag = c.abs();
        let pow = lambda_power(&BigInt::from(k as u64 * d as u64), latex);
        if pow.is_empty() || !mag.is_one() {
            let _ = write!(out, "{mag}");
        }
        out.push_str(&pow);
    }
    out
}

fn exponent_suffix(e: &BigInt, latex: bool) -> String {
    match (e.is_one(), latex) {
        (true, _) => String::new(),
        (false, true) => format!("^{{{e}}}"),
        (false, false) => format!("^{e}"),
    }
}

/// `λ^35 · (λ^3−1)^6 · (λ^3−2)^9`
pub fn render_text(f: &FactoredCharPoly) -> String {
    let mut parts = Vec::new();
    let lp = lambda_power(f.lambda_exponent(), false);
    if !lp.is_empty() {
        parts.push(lp);
    }
    for (p, e) in f.factors() {
        parts.push(format!("({}){}", render_factor(p, f.k(), false), exponent_suffix(e, false)));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" · ")
    }
}

/// `\lambda^{35}(\lambda^{3}-1)^{6}(\lambda^{3}-2)^{9}`
pub fn render_latex(f: &FactoredCharPoly) -> String {
    let mut out = lambda_power(f.lambda_exponent(), true);
    for (p, e) in f.factors() {
        let _ = write!(out, "({}){}", render_factor(p, f.k(), true), exponent_suffix(e, true));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}
