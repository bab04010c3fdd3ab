//! Structured JSON formats.
//!
//! All three documents carry `"format"` and `"version"` keys. Linear
//! expressions are objects mapping a monomial (`"1"`, `"zeta11"`,
//! `"Con[1,2,1,2]"`, ...) to an exact coefficient string `"p/q"`; keys appear
//! in symbol order (constant, ζ, ξ, CVol, Con). Output is pretty-printed with
//! a one-space indent and a trailing newline, so serialization is
//! byte-stable.
//!
//! * `con-solution-table`: `{"free": [Con...], "entries": {Con: expr}}`, all
//!   256 entries, free unknowns mapped to themselves.
//! * `linear-system`: `{"unknowns": [...], "parameters": [...],
//!   "equations": [{"family", "label", "terms": expr}]}`.
//! * `con-types`: `{"free": [...], "types": [{"type": "I", "entries": {Con: expr}}]}`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{Poly, Symbol};
use crate::scalar::Scalar;

use super::linexpr::LinExpr;
use super::solver::SolutionTable;
use super::types::{group_by_type, ConType};
use super::{Equation, Family, LinearSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected format `{expected}`, found `{found}`")]
    WrongFormat { expected: &'static str, found: String },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

fn expr_to_json<T: Scalar>(e: &LinExpr<T>) -> Value {
    let mut m = Map::new();
    for (mono, c) in e.to_poly().terms() {
        m.insert(mono.to_string(), Value::String(c.to_pq()));
    }
    Value::Object(m)
}

fn expr_from_json<T: Scalar>(v: &Value) -> Result<LinExpr<T>, FormatError> {
    let obj = v.as_object().ok_or_else(|| invalid("expression must be an object"))?;
    let mut p = Poly::zero();
    for (k, c) in obj {
        let c = c.as_str().ok_or_else(|| invalid(format!("coefficient of {k} must be a string")))?;
        let c = T::from_pq(c).ok_or_else(|| invalid(format!("bad coefficient `{c}`")))?;
        let mono: Poly<T> = k.parse().map_err(|e| invalid(format!("bad monomial `{k}`: {e}")))?;
        p += &mono.scale(&c);
    }
    LinExpr::from_poly(&p).map_err(|e| invalid(e.to_string()))
}

fn symbols_to_json(s: &[Symbol]) -> Value {
    Value::Array(s.iter().map(|c| Value::String(c.to_string())).collect())
}

fn symbols_from_json(v: Option<&Value>, what: &str) -> Result<Vec<Symbol>, FormatError> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| invalid(format!("missing `{what}` array")))?;
    arr.iter()
        .map(|x| {
            let s = x.as_str().ok_or_else(|| invalid(format!("`{what}` items must be strings")))?;
            s.parse().map_err(|_| invalid(format!("unknown symbol `{s}`")))
        })
        .collect()
}

fn render(v: &Value) -> String {
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(b" ");
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    v.serialize(&mut ser).expect("serializing a Value cannot fail");
    let mut s = String::from_utf8(buf).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

fn header(src: &str, expected: &'static str) -> Result<Value, FormatError> {
    let v: Value = serde_json::from_str(src).map_err(|e| FormatError::Json(e.to_string()))?;
    let found = v.get("format").and_then(Value::as_str).unwrap_or("").to_string();
    if found != expected {
        return Err(FormatError::WrongFormat { expected, found });
    }
    match v.get("version").and_then(Value::as_u64) {
        Some(1) => Ok(v),
        other => Err(invalid(format!("unsupported version {other:?}"))),
    }
}

fn entries_to_json<'a, T: Scalar>(it: impl Iterator<Item = (&'a Symbol, &'a LinExpr<T>)>) -> Value {
    let mut m = Map::new();
    for (c, e) in it {
        m.insert(c.to_string(), expr_to_json(e));
    }
    Value::Object(m)
}

fn entries_from_json<T: Scalar>(v: &Value) -> Result<BTreeMap<Symbol, LinExpr<T>>, FormatError> {
    let obj = v.as_object().ok_or_else(|| invalid("`entries` must be an object"))?;
    let mut out = BTreeMap::new();
    for (k, e) in obj {
        let c: Symbol = k.parse().map_err(|_| invalid(format!("unknown symbol `{k}`")))?;
        if !c.is_con() {
            return Err(invalid(format!("entry key `{k}` is not a Con symbol")));
        }
        out.insert(c, expr_from_json(e).map_err(|e| invalid(format!("{k}: {e}")))?);
    }
    Ok(out)
}

pub fn table_to_json<T: Scalar>(t: &SolutionTable<T>) -> String {
    render(&json!({
        "format": "con-solution-table",
        "version": 1,
        "free": symbols_to_json(&t.free),
        "entries": entries_to_json(t.entries.iter()),
    }))
}

pub fn parse_table<T: Scalar>(src: &str) -> Result<SolutionTable<T>, FormatError> {
    let v = header(src, "con-solution-table")?;
    let free = symbols_from_json(v.get("free"), "free")?;
    let entries = entries_from_json(v.get("entries").unwrap_or(&Value::Null))?;
    if entries.len() != 256 {
        return Err(invalid(format!("expected 256 entries, found {}", entries.len())));
    }
    Ok(SolutionTable { entries, free })
}

pub fn system_to_json<T: Scalar>(s: &LinearSystem<T>) -> String {
    let eqs: Vec<Value> = s
        .equations
        .iter()
        .map(|e| json!({"family": e.family.name(), "label": e.label, "terms": expr_to_json(&e.expr)}))
        .collect();
    render(&json!({
        "format": "linear-system",
        "version": 1,
        "unknowns": symbols_to_json(&LinearSystem::<T>::unknowns()),
        "parameters": symbols_to_json(&LinearSystem::<T>::parameters()),
        "equations": eqs,
    }))
}

pub fn parse_system<T: Scalar>(src: &str) -> Result<LinearSystem<T>, FormatError> {
    let v = header(src, "linear-system")?;
    let arr = v.get("equations").and_then(Value::as_array).ok_or_else(|| invalid("missing `equations` array"))?;
    let mut equations = Vec::with_capacity(arr.len());
    for e in arr {
        let fam = e.get("family").and_then(Value::as_str).unwrap_or("");
        let family = Family::from_name(fam).ok_or_else(|| invalid(format!("unknown family `{fam}`")))?;
        let label = e.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        let expr = expr_from_json(e.get("terms").unwrap_or(&Value::Null))?;
        equations.push(Equation { family, label, expr });
    }
    Ok(LinearSystem { equations })
}

pub fn types_report_to_json<T: Scalar>(t: &SolutionTable<T>) -> String {
    let groups: Vec<Value> = group_by_type(t)
        .into_iter()
        .map(|(ty, entries)| {
            json!({"type": ty.roman(), "entries": entries_to_json(entries.iter().map(|(c, e)| (c, *e)))})
        })
        .collect();
    render(&json!({
        "format": "con-types",
        "version": 1,
        "free": symbols_to_json(&t.free),
        "types": groups,
    }))
}

pub fn parse_types_report<T: Scalar>(src: &str) -> Result<SolutionTable<T>, FormatError> {
    let v = header(src, "con-types")?;
    let free = symbols_from_json(v.get("free"), "free")?;
    let groups = v.get("types").and_then(Value::as_array).ok_or_else(|| invalid("missing `types` array"))?;
    let mut entries = BTreeMap::new();
    for g in groups {
        let name = g.get("type").and_then(Value::as_str).unwrap_or("");
        let ty = ConType::from_roman(name).ok_or_else(|| invalid(format!("unknown type `{name}`")))?;
        for (c, e) in entries_from_json::<T>(g.get("entries").unwrap_or(&Value::Null))? {
            if super::types::classify_con(c) != ty {
                return Err(invalid(format!("{c} listed under type {name}")));
            }
            entries.insert(c, e);
        }
    }
    if entries.len() != 256 {
        return Err(invalid(format!("expected 256 entries, found {}", entries.len())));
    }
    Ok(SolutionTable { entries, free })
}
