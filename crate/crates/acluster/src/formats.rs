//! JSON schemas for Laurent polynomials, representations, formal sums,
//! frieze tables, basis tables and expansions.

use acluster_core::basis::{BasisElement, BasisTable, Expansion};
use acluster_core::frieze::FriezeTable;
use acluster_core::laurent::to_fraction_string;
use acluster_core::rep::{LambdaMatrix, ModuleFamily};
use acluster_core::tube::FormalSum;
use acluster_core::{Error, LaurentPoly, Quiver};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// Integers that fit in `i64` as JSON numbers, larger ones as strings.
pub fn int_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| CliError::Usage(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| CliError::Usage(format!("not an integer: {s:?}"))),
        _ => Err(CliError::Usage(format!("not an integer: {v}"))),
    }
}

pub fn laurent_json(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({"coef": int_json(c), "exp": e.as_slice()})).collect();
    let denominator = p.denominator_vector().ok();
    json!({
        "rank": p.rank(),
        "text": p.to_string(),
        "fraction": to_fraction_string(p),
        "denominator": denominator,
        "terms": terms,
    })
}

/// Reads either canonical text or the JSON written by [`laurent_json`].
pub fn parse_laurent(text: &str, rank: usize) -> Result<LaurentPoly, CliError> {
    let t = text.trim();
    if !t.starts_with('{') {
        return Ok(LaurentPoly::parse(t, rank)?);
    }
    let v: Value = serde_json::from_str(t).map_err(|e| CliError::Usage(format!("bad Laurent JSON: {e}")))?;
    let terms = v["terms"].as_array().ok_or_else(|| CliError::Usage("Laurent JSON needs \"terms\"".into()))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let exp: Vec<i32> = serde_json::from_value(term["exp"].clone())
            .map_err(|e| CliError::Usage(format!("bad exponent vector: {e}")))?;
        out.push((exp, int_from_json(&term["coef"])?));
    }
    Ok(LaurentPoly::from_terms(rank, out)?)
}

/// A module over the integers, reduced modulo each sampled prime. Matrices are
/// row-major, one per arrow in the preset's arrow order; `linear` holds the
/// coefficients of the parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub dims: Vec<usize>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub linear: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub characteristic: Option<u64>,
}

fn flatten(m: &[Vec<i64>], rows: usize, cols: usize, what: &str) -> Result<Vec<i64>, CliError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParameter(format!("{what} must be {rows}x{cols}")).into());
    }
    Ok(m.iter().flatten().copied().collect())
}

impl RepresentationFile {
    pub fn family(&self, q: &Quiver) -> Result<ModuleFamily, CliError> {
        if self.matrices.len() != q.arrows().len() {
            return Err(Error::RankMismatch { expected: q.arrows().len(), found: self.matrices.len() }.into());
        }
        if self.dims.len() != q.n() {
            return Err(Error::RankMismatch { expected: q.n(), found: self.dims.len() }.into());
        }
        let mut mats = Vec::new();
        for (k, &(s, t)) in q.arrows().iter().enumerate() {
            let (rows, cols) = (self.dims[t], self.dims[s]);
            let what = format!("matrix of arrow {}", k + 1);
            let constant = flatten(&self.matrices[k], rows, cols, &what)?;
            let linear = match &self.linear {
                Some(l) => flatten(l.get(k).ok_or_else(|| CliError::Usage(format!("missing linear part of arrow {}", k + 1)))?, rows, cols, &what)?,
                None => vec![0; rows * cols],
            };
            mats.push(LambdaMatrix { rows, cols, constant, linear });
        }
        Ok(ModuleFamily::matrices(q.clone(), self.dims.clone(), mats)?)
    }
}

pub fn formal_sum_json(s: &FormalSum) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(labels, c)| {
            let ls: Vec<Value> = labels.iter().map(|l| json!([l.socle, l.len])).collect();
            json!({"coef": c, "labels": ls})
        })
        .collect();
    json!({"text": s.to_string(), "terms": terms})
}

pub fn frieze_json(t: &FriezeTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|(c, e)| json!({"slice": c.slice, "vertex": c.vertex + 1, "dim": e.dim, "value": laurent_json(&e.value)}))
        .collect();
    json!({"forward": t.forward(), "backward": t.backward(), "entries": entries})
}

pub fn element_json(e: &BasisElement) -> Value {
    json!({
        "dim": e.dim,
        "kind": e.kind.as_str(),
        "object": e.description(),
        "value": laurent_json(&e.value),
    })
}

pub fn expansion_json(e: &Expansion, t: &BasisTable) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|(c, d)| {
            let kind = t.get(d).map(|el| el.kind.as_str()).unwrap_or("missing");
            json!({"coef": int_json(c), "dim": d, "kind": kind})
        })
        .collect();
    Value::Array(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_round_trip() {
        let p = LaurentPoly::parse("-3*x1 - x2 + 2 + x1^-2*x2^5", 2).unwrap();
        let j = laurent_json(&p).to_string();
        assert_eq!(parse_laurent(&j, 2).unwrap(), p);
        assert_eq!(parse_laurent(&p.to_string(), 2).unwrap(), p);
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int_from_json(&int_json(&big)).unwrap(), big);
    }

    #[test]
    fn representation_file() {
        let q = Quiver::from_preset(acluster_core::Preset::Kronecker).unwrap();
        let f: RepresentationFile =
            serde_json::from_str(r#"{"dims":[1,1],"matrices":[[[1]],[[0]]],"linear":[[[0]],[[1]]]}"#).unwrap();
        let m = f.family(&q).unwrap();
        assert!(m.is_parametric());
        let bad: RepresentationFile = serde_json::from_str(r#"{"dims":[1,2],"matrices":[[[1]],[[0]]]}"#).unwrap();
        assert!(bad.family(&q).is_err());
    }
}
