//! JSON documents for the five data kinds. Every document carries a `kind`
//! key; cyclotomic numbers are `{order, coeffs: [[num, den], ...]}` with
//! `coeffs[k]` the coefficient of `zeta_order^k`. Integers that do not fit
//! in 64 bits are written as decimal strings. Loading validates.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::gauge::{validate_mu, GaugeProblem};
use crate::invariant::{InvariantMatrix, Provenance};
use crate::linalg::{CycloMatrix, IntMatrix};
use crate::modular::ModularData;
use crate::nimrep::{BoundaryGraph, GraphFamily};
use crate::scalar::{CycloNumber, RationalPhase};

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    FusionRing(FusionRing),
    ModularData(ModularData),
    Graph(BoundaryGraph),
    Gauge(GaugeProblem),
    Invariant(InvariantMatrix),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::FusionRing(_) => "fusion-ring",
            Document::ModularData(_) => "modular-data",
            Document::Graph(_) => "graph",
            Document::Gauge(_) => "gauge",
            Document::Invariant(_) => "invariant",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match self {
            Document::FusionRing(r) => ring_to_json(r),
            Document::ModularData(md) => json!({
                "name": md.name(),
                "ring": ring_to_json(md.ring()),
                "s": (0..md.rank())
                    .map(|i| md.s().row(i).iter().map(cyclo_to_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "t": md.t().iter().map(|t| json!([int_to_json(t.numer()), int_to_json(t.denom())])).collect::<Vec<_>>(),
            }),
            Document::Graph(g) => json!({
                "family": g.family().spec(),
                "vertices": g.vertices(),
                "adjacency": g.adjacency().to_rows(),
            }),
            Document::Gauge(gp) => json!({
                "nodes": gp.nodes(),
                "mu": gp
                    .entries()
                    .map(|(i, j, v)| json!({"i": gp.nodes()[i], "j": gp.nodes()[j], "value": cyclo_to_json(v)}))
                    .collect::<Vec<_>>(),
            }),
            Document::Invariant(z) => json!({
                "provenance": z.provenance().as_str(),
                "z": z.z().to_rows(),
            }),
        };
        v.as_object_mut().expect("object").insert("kind".into(), json!(self.kind()));
        v
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serialisable");
        s.push('\n');
        s
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    document_from_json(&v)
}

pub fn parse_data_file(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn write_data_file(path: impl AsRef<Path>, doc: &Document) -> Result<()> {
    std::fs::write(path, doc.to_json_string())?;
    Ok(())
}

pub fn document_from_json(v: &Value) -> Result<Document> {
    let obj = as_object(v, "$")?;
    let kind = as_str(field(obj, "kind", "$")?, "kind")?;
    match kind {
        "fusion-ring" => {
            let r = ring_from_json(obj, "$")?;
            r.verify_axioms()?;
            Ok(Document::FusionRing(r))
        }
        "modular-data" => {
            let name = match obj.get("name") {
                Some(n) => as_str(n, "name")?.to_string(),
                None => "custom".to_string(),
            };
            let ring = ring_from_json(as_object(field(obj, "ring", "$")?, "ring")?, "ring")?;
            let rows = as_array(field(obj, "s", "$")?, "s")?;
            let s: Vec<Vec<CycloNumber>> = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let p = format!("s[{i}]");
                    as_array(row, &p)?
                        .iter()
                        .enumerate()
                        .map(|(j, x)| cyclo_from_json(x, &format!("{p}[{j}]")))
                        .collect()
                })
                .collect::<Result<_>>()?;
            if let Some(i) = s.iter().position(|row| row.len() != s.len()) {
                return Err(Error::Parse(format!("s[{i}]: expected {} entries, found {}", s.len(), s[i].len())));
            }
            let t: Vec<RationalPhase> = as_array(field(obj, "t", "$")?, "t")?
                .iter()
                .enumerate()
                .map(|(i, x)| rational_from_json(x, &format!("t[{i}]")).map(RationalPhase::new))
                .collect::<Result<_>>()?;
            let n = s.len();
            let s = CycloMatrix::from_fn(n, |i, j| s[i][j].clone());
            Ok(Document::ModularData(ModularData::new(name, ring, s, t)?))
        }
        "graph" => {
            let vertices = string_list(field(obj, "vertices", "$")?, "vertices")?;
            let adjacency = int_matrix(field(obj, "adjacency", "$")?, "adjacency")?;
            let family = match obj.get("family") {
                Some(f) => parse_family(as_str(f, "family")?)?,
                None => GraphFamily::Custom,
            };
            if let GraphFamily::Union(parts) = &family {
                if parts.iter().all(|p| p.coxeter_number().is_some()) {
                    let want = BoundaryGraph::from_spec(&family.spec())?;
                    if want.adjacency() != &adjacency {
                        return Err(Error::InvalidArgument(format!(
                            "adjacency does not match the union {family}"
                        )));
                    }
                }
            }
            Ok(Document::Graph(BoundaryGraph::new(vertices, adjacency, family)?))
        }
        "gauge" => {
            let nodes = string_list(field(obj, "nodes", "$")?, "nodes")?;
            let index = |name: &Value, p: &str| -> Result<usize> {
                let s = match name {
                    Value::Number(n) => n.to_string(),
                    _ => as_str(name, p)?.to_string(),
                };
                nodes
                    .iter()
                    .position(|x| *x == s)
                    .ok_or_else(|| Error::Parse(format!("{p}: unknown node `{s}`")))
            };
            let entries = as_array(field(obj, "mu", "$")?, "mu")?
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let p = format!("mu[{k}]");
                    let o = as_object(e, &p)?;
                    Ok((
                        index(field(o, "i", &p)?, &format!("{p}.i"))?,
                        index(field(o, "j", &p)?, &format!("{p}.j"))?,
                        cyclo_from_json(field(o, "value", &p)?, &format!("{p}.value"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let gp = GaugeProblem::new(nodes, entries)?;
            validate_mu(&gp)?;
            Ok(Document::Gauge(gp))
        }
        "invariant" => {
            let z = int_matrix(field(obj, "z", "$")?, "z")?;
            let provenance = match obj.get("provenance") {
                Some(p) => {
                    let s = as_str(p, "provenance")?;
                    Provenance::parse(s).ok_or_else(|| {
                        Error::Parse(format!(
                            "provenance: `{s}` is not one of user, enumerated, diagonal-built"
                        ))
                    })?
                }
                None => Provenance::User,
            };
            Ok(Document::Invariant(InvariantMatrix::new(z, provenance)?))
        }
        other => Err(Error::Parse(format!(
            "kind: `{other}` is not one of fusion-ring, modular-data, graph, gauge, invariant"
        ))),
    }
}

/// Inverse of [`GraphFamily::spec`].
pub fn parse_family(spec: &str) -> Result<GraphFamily> {
    let parts: Vec<GraphFamily> = spec
        .split('+')
        .map(|p| {
            let p = p.trim();
            if p == "custom" {
                return Ok(GraphFamily::Custom);
            }
            let bad = || Error::Parse(format!("family: bad graph family `{p}`"));
            let (f, n) = p.split_once(':').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            match f.trim() {
                "A" => Ok(GraphFamily::A(n)),
                "D" => Ok(GraphFamily::D(n)),
                "E" => Ok(GraphFamily::E(n)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<_>>()?;
    Ok(if parts.len() == 1 {
        parts.into_iter().next().expect("one part")
    } else {
        GraphFamily::Union(parts)
    })
}

fn ring_to_json(r: &FusionRing) -> Value {
    let n = r.rank();
    let mut rules = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for &(c, v) in r.product(a, b) {
                rules.push(json!([a, b, c, v]));
            }
        }
    }
    json!({
        "labels": r.labels(),
        "dual": r.duals(),
        "fusion": rules,
    })
}

/// `fusion` lists the nonzero `[a, b, c, N_ab^c]`.
fn ring_from_json(obj: &Map<String, Value>, at: &str) -> Result<FusionRing> {
    let p = |k: &str| if at == "$" { k.to_string() } else { format!("{at}.{k}") };
    let labels = string_list(field(obj, "labels", at)?, &p("labels"))?;
    let n = labels.len();
    let dual: Vec<usize> = as_array(field(obj, "dual", at)?, &p("dual"))?
        .iter()
        .enumerate()
        .map(|(i, x)| as_index(x, n, &format!("{}[{i}]", p("dual"))))
        .collect::<Result<_>>()?;
    let mut tensor = vec![vec![vec![0u32; n]; n]; n];
    for (k, rule) in as_array(field(obj, "fusion", at)?, &p("fusion"))?.iter().enumerate() {
        let rp = format!("{}[{k}]", p("fusion"));
        let r = as_array(rule, &rp)?;
        if r.len() != 4 {
            return Err(Error::Parse(format!("{rp}: expected [a, b, c, N]")));
        }
        let (a, b, c) = (as_index(&r[0], n, &rp)?, as_index(&r[1], n, &rp)?, as_index(&r[2], n, &rp)?);
        let v = r[3]
            .as_u64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| Error::Parse(format!("{rp}: multiplicity must be a non-negative integer")))?;
        tensor[a][b][c] = v;
    }
    FusionRing::new(labels, dual, &tensor)
}

pub fn cyclo_to_json(x: &CycloNumber) -> Value {
    json!({
        "order": x.order(),
        "coeffs": x.coeffs().iter().map(|c| json!([int_to_json(c.numer()), int_to_json(c.denom())])).collect::<Vec<_>>(),
    })
}

/// Also accepts a bare integer or a `[num, den]` pair for rationals.
pub fn cyclo_from_json(v: &Value, at: &str) -> Result<CycloNumber> {
    if v.is_number() || v.is_string() || v.is_array() {
        return Ok(CycloNumber::from_rational(&rational_from_json(v, at)?));
    }
    let o = as_object(v, at)?;
    let order = field(o, "order", at)?
        .as_u64()
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .ok_or_else(|| Error::Parse(format!("{at}.order: expected a positive integer")))?;
    let coeffs: Vec<BigRational> = as_array(field(o, "coeffs", at)?, &format!("{at}.coeffs"))?
        .iter()
        .enumerate()
        .map(|(k, c)| rational_from_json(c, &format!("{at}.coeffs[{k}]")))
        .collect::<Result<_>>()?;
    if coeffs.len() as u64 != order {
        return Err(Error::Parse(format!(
            "{at}.coeffs: expected {order} coefficients, found {}",
            coeffs.len()
        )));
    }
    Ok(CycloNumber::from_coeffs(&coeffs))
}

fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn int_from_json(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{at}: expected an integer, found {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{at}: `{s}` is not an integer"))),
        _ => Err(Error::Parse(format!("{at}: expected an integer"))),
    }
}

/// An integer or `[num, den]`.
fn rational_from_json(v: &Value, at: &str) -> Result<BigRational> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let num = int_from_json(&a[0], &format!("{at}[0]"))?;
            let den = int_from_json(&a[1], &format!("{at}[1]"))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("{at}: zero denominator")));
            }
            Ok(BigRational::new(num, den))
        }
        Value::Array(_) => Err(Error::Parse(format!("{at}: expected [num, den]"))),
        _ => Ok(BigRational::from_integer(int_from_json(v, at)?)),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| {
        if at == "$" {
            Error::Parse(format!("missing key `{key}`"))
        } else {
            Error::Parse(format!("{at}: missing key `{key}`"))
        }
    })
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse(format!("{at}: expected an object")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{at}: expected an array")))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{at}: expected a string")))
}

fn as_index(v: &Value, n: usize, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .filter(|&x| x < n)
        .ok_or_else(|| Error::Parse(format!("{at}: expected an index below {n}")))
}

fn string_list(v: &Value, at: &str) -> Result<Vec<String>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::Parse(format!("{at}[{i}]: expected a string"))),
        })
        .collect()
}

fn int_matrix(v: &Value, at: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            as_array(row, &format!("{at}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("{at}[{i}][{j}]: expected an integer")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    IntMatrix::try_from_rows(&rows).ok_or_else(|| Error::Parse(format!("{at}: rows have different lengths")))
}
