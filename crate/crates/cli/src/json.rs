//! JSON encoding of the engine's exact objects.
//!
//! Big integers travel as decimal strings. A rational function is
//! `{"den": [..], "num": [..]}` with coprime integer coefficients in
//! ascending degree; constants may also be written as a single `"p/q"`
//! string. Writers always emit the canonical object form, and objects are
//! serialized with sorted keys.

use std::str::FromStr;

use painleve_core::auxhier::KudryashovConstraint;
use painleve_core::classify::{ClassificationVerdict, Status, TableMatch};
use painleve_core::exactalg::{parse_scalar, BigInt, Poly, RatFunc, Scalar};
use painleve_core::hierarchy::{CouplingVariant, ParamVector, SolutionTuple, SystemKind, SystemSpec};
use painleve_core::miura::TransformReport;
use painleve_core::seeds::Table;
use painleve_core::weyl::BtResult;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

pub type JsonResult<T> = Result<T, JsonError>;

fn fail<T>(path: &str, message: impl Into<String>) -> JsonResult<T> {
    Err(JsonError {
        path: path.to_string(),
        message: message.into(),
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> JsonResult<&'a Value> {
    match obj.get(key) {
        Some(v) => Ok(v),
        None => fail(path, format!("missing field {key:?}")),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> JsonResult<&'a Map<String, Value>> {
    match v.as_object() {
        Some(o) => Ok(o),
        None => fail(path, "expected an object"),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> JsonResult<&'a Vec<Value>> {
    match v.as_array() {
        Some(a) => Ok(a),
        None => fail(path, "expected an array"),
    }
}

pub fn parse_document(text: &str) -> JsonResult<Value> {
    serde_json::from_str(text).map_err(|e| JsonError {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn scalar_to_json(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn scalar_from_json(v: &Value, path: &str) -> JsonResult<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).or_else(|_| fail(path, format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_scalar(&n.to_string()).or_else(|_| fail(path, "not an integer"))
        }
        _ => fail(path, "expected a rational as a \"p/q\" string"),
    }
}

fn ints_to_json(c: &[BigInt]) -> Value {
    Value::Array(c.iter().map(|x| Value::String(x.to_string())).collect())
}

fn ints_from_json(v: &Value, path: &str) -> JsonResult<Vec<BigInt>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                _ => return fail(&p, "expected a decimal integer string"),
            };
            BigInt::from_str(text.trim()).or_else(|_| fail(&p, format!("not an integer: {text:?}")))
        })
        .collect()
}

/// Ascending rational coefficients.
pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    let (num, den) = f.integer_coeffs();
    json!({ "den": ints_to_json(&den), "num": ints_to_json(&num) })
}

pub fn ratfunc_from_json(v: &Value, path: &str) -> JsonResult<RatFunc> {
    if let Value::String(_) = v {
        return scalar_from_json(v, path).map(RatFunc::constant);
    }
    let obj = as_object(v, path)?;
    let num = ints_from_json(field(obj, "num", path)?, &format!("{path}.num"))?;
    let den = ints_from_json(field(obj, "den", path)?, &format!("{path}.den"))?;
    if den.iter().all(|c| c == &BigInt::from(0)) {
        return fail(&format!("{path}.den"), "denominator must be nonempty and not all zero");
    }
    RatFunc::from_integer_coeffs(&num, &den).or_else(|e| fail(path, e.to_string()))
}

pub fn params_to_json(p: &ParamVector) -> Value {
    Value::Array(p.as_slice().iter().map(scalar_to_json).collect())
}

pub fn params_from_json(v: &Value, path: &str) -> JsonResult<ParamVector> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, &format!("{path}[{i}]")))
        .collect::<JsonResult<Vec<_>>>()
        .map(ParamVector::new)
}

pub fn kind_name(kind: SystemKind) -> &'static str {
    match kind {
        SystemKind::P4Ny => "p4ny",
        SystemKind::P4Dc => "p4dc",
        SystemKind::P5Ny => "p5ny",
        SystemKind::P5Dc => "p5dc",
        SystemKind::Kudryashov2 => "kudryashov2",
    }
}

pub fn kind_from_name(name: &str) -> Option<SystemKind> {
    Some(match name {
        "p4ny" => SystemKind::P4Ny,
        "p4dc" => SystemKind::P4Dc,
        "p5ny" => SystemKind::P5Ny,
        "p5dc" => SystemKind::P5Dc,
        "kudryashov2" => SystemKind::Kudryashov2,
        _ => return None,
    })
}

pub fn variant_name(v: CouplingVariant) -> &'static str {
    match v {
        CouplingVariant::LiteralF0 => "literal_f0",
        CouplingVariant::DiagonalFi => "diagonal_fi",
    }
}

pub fn variant_from_name(name: &str) -> Option<CouplingVariant> {
    match name {
        "literal_f0" => Some(CouplingVariant::LiteralF0),
        "diagonal_fi" => Some(CouplingVariant::DiagonalFi),
        _ => None,
    }
}

pub fn system_to_json(s: &SystemSpec) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), kind_name(s.kind).into());
    obj.insert("n".into(), s.n.into());
    if s.kind == SystemKind::P5Ny {
        obj.insert("variant".into(), variant_name(s.variant).into());
    }
    for (key, value) in [("c0", &s.c0), ("c1", &s.c1), ("beta", &s.beta), ("delta", &s.delta)] {
        if let Some(c) = value {
            obj.insert(key.into(), scalar_to_json(c));
        }
    }
    Value::Object(obj)
}

pub fn system_from_json(v: &Value, path: &str) -> JsonResult<SystemSpec> {
    let obj = as_object(v, path)?;
    let kind = match field(obj, "kind", path)?.as_str().and_then(kind_from_name) {
        Some(k) => k,
        None => return fail(&format!("{path}.kind"), "expected one of p4ny, p4dc, p5ny, p5dc, kudryashov2"),
    };
    let n = match field(obj, "n", path)?.as_u64() {
        Some(n) => n as usize,
        None => return fail(&format!("{path}.n"), "expected a nonnegative integer"),
    };
    let opt = |key: &str| -> JsonResult<Option<Scalar>> {
        obj.get(key)
            .map(|v| scalar_from_json(v, &format!("{path}.{key}")))
            .transpose()
    };
    let variant = match obj.get("variant") {
        None => CouplingVariant::default(),
        Some(v) => match v.as_str().and_then(variant_from_name) {
            Some(v) => v,
            None => return fail(&format!("{path}.variant"), "expected literal_f0 or diagonal_fi"),
        },
    };
    let spec = SystemSpec {
        kind,
        n,
        c0: opt("c0")?,
        c1: opt("c1")?,
        variant,
        beta: opt("beta")?,
        delta: opt("delta")?,
    };
    spec.validate().or_else(|e| fail(path, e.to_string()))?;
    Ok(spec)
}

fn components_to_json(c: &[RatFunc]) -> Value {
    Value::Array(c.iter().map(ratfunc_to_json).collect())
}

pub fn components_from_json(v: &Value, path: &str) -> JsonResult<Vec<RatFunc>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| ratfunc_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

/// `{"components": .., "params": .., "system": ..}`
pub fn tuple_to_json(s: &SolutionTuple) -> Value {
    json!({
        "components": components_to_json(&s.components),
        "params": params_to_json(&s.params),
        "system": system_to_json(&s.system),
    })
}

/// The pieces of a tuple document. Components sit at the top level or under
/// `solution`; system and parameters may be left to the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleDocument {
    pub system: Option<SystemSpec>,
    pub params: Option<ParamVector>,
    pub components: Vec<RatFunc>,
}

pub fn tuple_document_from_json(v: &Value) -> JsonResult<TupleDocument> {
    let obj = as_object(v, "$")?;
    let components = match (obj.get("components"), obj.get("solution")) {
        (Some(c), _) => components_from_json(c, "$.components")?,
        (None, Some(sol)) => {
            let sol_obj = as_object(sol, "$.solution")?;
            components_from_json(field(sol_obj, "components", "$.solution")?, "$.solution.components")?
        }
        (None, None) => return fail("$", "missing field \"components\""),
    };
    Ok(TupleDocument {
        system: obj.get("system").map(|s| system_from_json(s, "$.system")).transpose()?,
        params: obj.get("params").map(|p| params_from_json(p, "$.params")).transpose()?,
        components,
    })
}

pub fn tuple_from_json(v: &Value) -> JsonResult<SolutionTuple> {
    let doc = tuple_document_from_json(v)?;
    let (Some(system), Some(params)) = (doc.system, doc.params) else {
        return fail("$", "a tuple needs \"system\" and \"params\"");
    };
    SolutionTuple::new(system, params, doc.components).or_else(|e| fail("$", e.to_string()))
}

/// Catalog entry for a transported solution.
pub fn entry_to_json(r: &BtResult) -> Value {
    let degrees: Vec<usize> = r.solution.components.iter().map(RatFunc::total_degree).collect();
    json!({
        "degree_stats": {
            "max_component_degree": degrees.iter().copied().max().unwrap_or(0),
            "total_degree": r.solution.total_degree(),
        },
        "params": params_to_json(&r.params),
        "solution": { "components": components_to_json(&r.solution.components) },
        "system": system_to_json(&r.solution.system),
        "verified": r.verified,
        "word": r.word.to_string(),
    })
}

pub fn table_name(t: Table) -> &'static str {
    match t {
        Table::P4 => "P4",
        Table::P5 => "P5",
    }
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Admits => "ADMITS",
        Status::NotInTables => "NOT_IN_TABLES",
        Status::UndecidedAtDepth => "UNDECIDED_AT_DEPTH",
    }
}

fn table_match_to_json(m: &TableMatch) -> Value {
    let mut obj = Map::new();
    obj.insert("table".into(), table_name(m.table).into());
    obj.insert("k".into(), m.k.into());
    obj.insert("arrangement".into(), m.arrangement.to_string().into());
    if let Some(a0) = &m.a0 {
        obj.insert("a0".into(), scalar_to_json(a0));
    }
    Value::Object(obj)
}

pub fn verdict_to_json(v: &ClassificationVerdict) -> Value {
    json!({
        "matched_row": v.matched_row.as_ref().map(table_match_to_json),
        "normalized_params": params_to_json(&v.normalized_params),
        "search_depth_used": v.search_depth_used,
        "status": status_name(v.status),
        "witness": v.witness.as_ref().map(entry_to_json),
    })
}

pub fn report_to_json(r: &TransformReport) -> Value {
    json!({
        "forward_ok": r.forward_ok,
        "residual_identity_ok": r.residual_identity_ok,
        "samples_checked": r.samples_checked,
        "source_ok": r.source_ok,
    })
}

pub fn constraint_to_json(c: &KudryashovConstraint) -> Value {
    json!({
        "curve": c.curve.as_ref().map(|(num, den)| json!({
            "delta_denominator": poly_to_json(den),
            "delta_numerator": poly_to_json(num),
        })),
        "free_delta": c.free_delta.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "points": c.points.iter().map(|(b, d)| json!({
            "beta": scalar_to_json(b),
            "delta": scalar_to_json(d),
        })).collect::<Vec<_>>(),
        "sigma": scalar_to_json(&c.sigma),
        "unresolved": c.unresolved.as_ref().map(poly_to_json),
    })
}
