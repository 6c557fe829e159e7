//! Object specs: `TP:i`, `S:i`, `frieze:slice,vertex`, `E:tube,socle,len`,
//! `delta:n=k`, `sum:(spec)+(spec)`, `file:path.json`; products are
//! `(spec)*(spec)`.

use std::path::PathBuf;

use acluster_core::frieze::{knit, ZQCoord};
use acluster_core::quiver::{self, DimVector};
use acluster_core::rep::{build_homogeneous, build_regular, regular_simple_dims, simple, CountConfig, ModuleFamily};
use acluster_core::tube::{delta_variable, wrap, TubeContext};
use acluster_core::{ccmap, Error, LaurentPoly, Preset, Quiver};

use crate::formats::RepresentationFile;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectSpec {
    /// One-based vertex.
    Shift(usize),
    Simple(usize),
    Frieze { slice: i64, vertex: usize },
    Regular { tube: usize, socle: usize, len: usize },
    Delta(usize),
    Sum(Vec<ObjectSpec>),
    File(PathBuf),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Splits `(a)op(b)op(c)` at top-level `op`, stripping the parentheses.
fn split_parenthesized(s: &str, op: char) -> Result<Vec<&str>, CliError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    let mut expect_op = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => {
                if depth == 0 {
                    if expect_op {
                        return Err(usage(format!("missing '{op}' in {s:?}")));
                    }
                    start = Some(i + 1);
                }
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(usage(format!("unbalanced parentheses in {s:?}")));
                }
                if depth == 0 {
                    parts.push(&s[start.take().unwrap()..i]);
                    expect_op = true;
                }
            }
            c if depth == 0 && c == op && expect_op => expect_op = false,
            c if depth == 0 && c.is_whitespace() => {}
            _ if depth == 0 => return Err(usage(format!("unexpected {ch:?} in {s:?}"))),
            _ => {}
        }
    }
    if depth != 0 || !expect_op || parts.is_empty() {
        return Err(usage(format!("malformed {s:?}")));
    }
    Ok(parts)
}

/// Reads `a,b,c` or `key=a,key=b,...` against the expected key order.
fn fields(body: &str, keys: &[&str]) -> Result<Vec<i64>, CliError> {
    let items: Vec<&str> = body.split(',').map(str::trim).collect();
    if items.len() != keys.len() {
        return Err(usage(format!("expected {} fields ({}) in {body:?}", keys.len(), keys.join(","))));
    }
    items
        .iter()
        .zip(keys)
        .map(|(item, key)| {
            let v = match item.split_once('=') {
                Some((k, v)) if k.trim() == *key => v.trim(),
                Some((k, _)) => return Err(usage(format!("expected key {key}, found {k}"))),
                None => item,
            };
            v.parse::<i64>().map_err(|_| usage(format!("not an integer: {v:?}")))
        })
        .collect()
}

fn positive(v: i64, what: &str) -> Result<usize, CliError> {
    if v < 1 {
        return Err(usage(format!("{what} must be at least 1")));
    }
    Ok(v as usize)
}

pub fn parse_object(s: &str) -> Result<ObjectSpec, CliError> {
    let s = s.trim();
    let (head, body) = s.split_once(':').ok_or_else(|| usage(format!("object spec {s:?} has no ':'")))?;
    match head {
        "TP" => Ok(ObjectSpec::Shift(positive(fields(body, &["i"])?[0], "vertex")?)),
        "S" => Ok(ObjectSpec::Simple(positive(fields(body, &["i"])?[0], "vertex")?)),
        "frieze" => {
            let f = fields(body, &["slice", "vertex"])?;
            Ok(ObjectSpec::Frieze { slice: f[0], vertex: positive(f[1], "vertex")? })
        }
        "E" => {
            let f = fields(body, &["tube", "socle", "len"])?;
            if f[2] < 0 {
                return Err(usage("len must be nonnegative"));
            }
            Ok(ObjectSpec::Regular { tube: positive(f[0], "tube")?, socle: positive(f[1], "socle")?, len: f[2] as usize })
        }
        "delta" => {
            let n = fields(body, &["n"])?[0];
            if n < 0 {
                return Err(usage("n must be nonnegative"));
            }
            Ok(ObjectSpec::Delta(n as usize))
        }
        "sum" => Ok(ObjectSpec::Sum(split_parenthesized(body, '+')?.into_iter().map(parse_object).collect::<Result<_, _>>()?)),
        "file" => Ok(ObjectSpec::File(PathBuf::from(body))),
        _ => Err(usage(format!("unknown object kind {head:?}"))),
    }
}

/// A product `(spec)*(spec)*...`, or a single spec.
pub fn parse_product(s: &str) -> Result<Vec<ObjectSpec>, CliError> {
    let t = s.trim();
    if t.starts_with('(') {
        split_parenthesized(t, '*')?.into_iter().map(parse_object).collect()
    } else {
        Ok(vec![parse_object(t)?])
    }
}

/// Value and extended dimension vector of an object.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub value: LaurentPoly,
    pub dim: DimVector,
}

pub struct Resolver {
    pub preset: Preset,
    pub quiver: Quiver,
    pub config: CountConfig,
    pub cap: usize,
}

impl Resolver {
    pub fn new(preset: Preset, config: CountConfig, cap: usize) -> Result<Self, CliError> {
        Ok(Resolver { preset, quiver: Quiver::from_preset(preset)?, config, cap })
    }

    fn vertex(&self, i: usize) -> Result<usize, CliError> {
        if i > self.quiver.n() {
            return Err(Error::IndexOutOfRange(format!("vertex {i} of {}", self.preset)).into());
        }
        Ok(i - 1)
    }

    fn regular_dims(&self, tube: usize, socle: usize, len: usize) -> Result<DimVector, CliError> {
        let ranks = self.preset.tube_ranks();
        if tube == 0 || tube > ranks.len() {
            return Err(Error::IndexOutOfRange(format!("tube {tube} of {}", self.preset)).into());
        }
        let r = ranks[tube - 1];
        let mut d = vec![0; self.quiver.n()];
        for t in 0..len {
            d = quiver::add(&d, &regular_simple_dims(self.preset, tube, wrap((socle + t) as i64, r))?);
        }
        Ok(d)
    }

    pub fn resolve(&self, spec: &ObjectSpec) -> Result<Resolved, CliError> {
        let n = self.quiver.n();
        match spec {
            ObjectSpec::Shift(i) => {
                let v = self.vertex(*i)?;
                Ok(Resolved { value: LaurentPoly::var(n, v), dim: quiver::scale(&quiver::unit(n, v), -1) })
            }
            ObjectSpec::Simple(_) | ObjectSpec::File(_) => {
                let m = self.module(spec)?;
                Ok(Resolved { value: ccmap::cc_variable(&m, &self.config)?, dim: m.dim_vector() })
            }
            ObjectSpec::Frieze { slice, vertex } => {
                let v = self.vertex(*vertex)?;
                let w = slice.unsigned_abs() as usize;
                let t = knit(&self.quiver, w, w)?;
                let e = t.get(ZQCoord { slice: *slice, vertex: v }).expect("inside the knitted window");
                Ok(Resolved { value: e.value.clone(), dim: e.dim.clone() })
            }
            ObjectSpec::Regular { tube, socle, len } => {
                let dim = self.regular_dims(*tube, *socle, *len)?;
                let ctx = TubeContext::from_preset(self.preset, *tube, self.cap.max(*len), &self.config)?;
                Ok(Resolved { value: ctx.tube_variable(*socle, *len)?.clone(), dim })
            }
            ObjectSpec::Delta(k) => Ok(Resolved {
                value: delta_variable(self.preset, *k, &self.config)?,
                dim: quiver::scale(&self.quiver.delta()?, *k as i64),
            }),
            ObjectSpec::Sum(parts) => {
                let mut value = LaurentPoly::one(n);
                let mut shifts = vec![0i64; n];
                let mut modules = vec![0i64; n];
                for p in parts {
                    let r = self.resolve(p)?;
                    for i in 0..n {
                        if r.dim[i] < 0 {
                            shifts[i] -= r.dim[i];
                        } else {
                            modules[i] += r.dim[i];
                        }
                    }
                    value = &value * &r.value;
                }
                if let Some(i) = (0..n).find(|&i| shifts[i] > 0 && modules[i] > 0) {
                    return Err(Error::IllFormedObject(format!(
                        "TP_{} together with a module supported at vertex {}",
                        i + 1,
                        i + 1
                    ))
                    .into());
                }
                Ok(Resolved { value, dim: quiver::sub(&modules, &shifts) })
            }
        }
    }

    /// Product of the values of several objects.
    pub fn resolve_product(&self, specs: &[ObjectSpec]) -> Result<Resolved, CliError> {
        let n = self.quiver.n();
        let mut out = Resolved { value: LaurentPoly::one(n), dim: vec![0; n] };
        for s in specs {
            let r = self.resolve(s)?;
            out.value = &out.value * &r.value;
            out.dim = quiver::add(&out.dim, &r.dim);
        }
        Ok(out)
    }

    /// The module behind a spec, for Grassmannian queries.
    pub fn module(&self, spec: &ObjectSpec) -> Result<ModuleFamily, CliError> {
        match spec {
            ObjectSpec::Shift(_) => Err(Error::InvalidParameter("TP_i is not a module".into()).into()),
            ObjectSpec::Simple(i) => Ok(simple(&self.quiver, self.vertex(*i)?)?),
            ObjectSpec::Frieze { slice, .. } if *slice == 0 => {
                Err(Error::InvalidParameter("slice 0 holds shifted projectives".into()).into())
            }
            ObjectSpec::Frieze { .. } => {
                let r = self.resolve(spec)?;
                Ok(ModuleFamily::exceptional(self.quiver.clone(), r.dim.iter().map(|&x| x as usize).collect())?)
            }
            ObjectSpec::Regular { tube, socle, len } => Ok(build_regular(self.preset, *tube, *socle, *len)?),
            ObjectSpec::Delta(k) => Ok(build_homogeneous(self.preset, *k)?),
            ObjectSpec::Sum(parts) => {
                let mut it = parts.iter();
                let first = self.module(it.next().ok_or_else(|| usage("empty sum"))?)?;
                it.try_fold(first, |acc, p| Ok(acc.direct_sum(self.module(p)?)))
            }
            ObjectSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                let file: RepresentationFile =
                    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                file.family(&self.quiver)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_object("TP:1").unwrap(), ObjectSpec::Shift(1));
        assert_eq!(parse_object("E:1,socle=2,len=3").unwrap(), ObjectSpec::Regular { tube: 1, socle: 2, len: 3 });
        assert_eq!(parse_object("E:1,2,3").unwrap(), ObjectSpec::Regular { tube: 1, socle: 2, len: 3 });
        assert_eq!(parse_object("delta:n=2").unwrap(), ObjectSpec::Delta(2));
        assert_eq!(parse_object("frieze:-2,3").unwrap(), ObjectSpec::Frieze { slice: -2, vertex: 3 });
        assert_eq!(
            parse_object("sum:(S:2)+(sum:(TP:1)+(TP:1))").unwrap(),
            ObjectSpec::Sum(vec![ObjectSpec::Simple(2), ObjectSpec::Sum(vec![ObjectSpec::Shift(1), ObjectSpec::Shift(1)])])
        );
        assert_eq!(parse_product("(TP:1)*(S:2)").unwrap(), vec![ObjectSpec::Shift(1), ObjectSpec::Simple(2)]);
        for bad in ["TP", "E:1,2", "sum:(TP:1)(TP:2)", "sum:(TP:1", "X:1", "E:1,len=2,socle=1", "TP:0"] {
            assert!(parse_object(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn kronecker_objects() {
        let r = Resolver::new(Preset::Kronecker, CountConfig::default(), acluster_core::tube::DEFAULT_CAP).unwrap();
        let s = r.resolve(&parse_object("sum:(S:2)+(TP:1)").unwrap()).unwrap();
        assert_eq!(s.dim, vec![-1, 1]);
        assert_eq!(s.value, LaurentPoly::parse("x1^3*x2^-1 + x1*x2^-1", 2).unwrap());
        assert!(r.resolve(&parse_object("sum:(S:2)+(TP:2)").unwrap()).is_err());
        let p2 = r.resolve(&parse_object("frieze:1,2").unwrap()).unwrap();
        assert_eq!(p2.value, r.resolve(&parse_object("S:2").unwrap()).unwrap().value);
    }
}
