//! JSON encodings for fields, scalars, algebras, schemes and planes.
//!
//! Scalars over `F_p` are integers in `[0, p)`; rationals are strings `"a/b"`
//! in lowest terms. Matrices and subspaces are row-major arrays. Object keys
//! are emitted in sorted order, so serialization is byte-stable.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::artin::{ArtinError, LocalAlgebra, SemilocalAlgebra};
use crate::exactlin::{Field, LinError, Mat, Scalar, Subspace};
use crate::reduce::{Reduction, ShrinkStep, ShrinkTrace};
use crate::scheme::{EmbeddedFiniteScheme, SchemeError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Artin(#[from] ArtinError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

impl FormatError {
    /// The message when the document is well formed but describes an invalid
    /// algebra or scheme, as opposed to a syntax or schema problem.
    pub fn violation(&self) -> Option<String> {
        match self {
            FormatError::Artin(ArtinError::Invalid(v)) => Some(v.to_string()),
            FormatError::Scheme(SchemeError::Invalid(v)) => Some(v.to_string()),
            FormatError::Scheme(SchemeError::Artin(ArtinError::Invalid(v))) => Some(v.to_string()),
            _ => None,
        }
    }
}

fn schema<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Schema(msg.into()))
}

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rational => json!({ "kind": "rational" }),
        Field::Prime(p) => json!({ "kind": "prime", "p": p }),
    }
}

/// Accepts `{"kind":"rational"}`, `{"kind":"prime","p":p}`, a bare prime,
/// or the strings `"QQ"`, `"rational"`, `"GF(p)"`.
pub fn field_from_json(v: &Value) -> Result<Field, FormatError> {
    match v {
        Value::Number(n) => match n.as_u64() {
            Some(p) => Ok(Field::prime(p)?),
            None => schema(format!("field modulus {n} is not a positive integer")),
        },
        Value::String(s) => parse_field_str(s),
        Value::Object(m) => match m.get("kind").and_then(Value::as_str) {
            Some("rational") => Ok(Field::Rational),
            Some("prime") => match m.get("p").and_then(Value::as_u64) {
                Some(p) => Ok(Field::prime(p)?),
                None => schema("prime field without integer \"p\""),
            },
            _ => schema("field object needs \"kind\": \"rational\" or \"prime\""),
        },
        _ => schema("unrecognized field descriptor"),
    }
}

/// `QQ`, `Q`, `rational`, `GF(p)`, `F_p`, `Fp` or a bare prime.
pub fn parse_field_str(s: &str) -> Result<Field, FormatError> {
    let t = s.trim();
    if ["QQ", "Q", "rational", "rationals"].contains(&t) {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .unwrap_or(t);
    match digits.parse::<u64>() {
        Ok(p) => Ok(Field::prime(p)?),
        Err(_) => schema(format!("unrecognized field {s:?}")),
    }
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Mod { v, .. } => json!(v),
        Scalar::Rat(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
    }
}

/// Integers, `"a"` or `"a/b"` strings, mapped into `field`.
pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar, FormatError> {
    let (num, den) = match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => (BigInt::from(i), BigInt::from(1)),
            None => match n.as_u64() {
                Some(u) => (BigInt::from(u), BigInt::from(1)),
                None => return schema(format!("scalar {n} is not an integer")),
            },
        },
        Value::String(s) => parse_fraction(s)?,
        _ => return schema(format!("scalar must be an integer or \"a/b\" string, got {v}")),
    };
    field
        .fraction(&num, &den)
        .ok_or_else(|| FormatError::Schema(format!("{v} has a denominator that vanishes in {field}")))
}

fn parse_fraction(s: &str) -> Result<(BigInt, BigInt), FormatError> {
    let bad = || FormatError::Schema(format!("cannot parse scalar {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    Ok((n, d))
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(field: Field, v: &Value) -> Result<Vec<Scalar>, FormatError> {
    match v {
        Value::Array(xs) => xs.iter().map(|x| scalar_from_json(field, x)).collect(),
        _ => schema("expected an array of scalars"),
    }
}

pub fn rows_to_json(rows: &[Vec<Scalar>]) -> Value {
    Value::Array(rows.iter().map(|r| vector_to_json(r)).collect())
}

pub fn rows_from_json(field: Field, v: &Value) -> Result<Vec<Vec<Scalar>>, FormatError> {
    match v {
        Value::Array(rows) => rows.iter().map(|r| vector_from_json(field, r)).collect(),
        _ => schema("expected an array of rows"),
    }
}

pub fn mat_to_json(m: &Mat) -> Value {
    rows_to_json(&m.to_rows())
}

pub fn subspace_to_json(u: &Subspace) -> Value {
    rows_to_json(u.basis())
}

/// Span of the given rows in `k^n`.
pub fn subspace_from_json(field: Field, n: usize, v: &Value) -> Result<Subspace, FormatError> {
    Ok(Subspace::span(field, n, rows_from_json(field, v)?)?)
}

/// Always emitted in `table` form, with basis labels.
pub fn algebra_to_json(a: &LocalAlgebra) -> Value {
    let table: Vec<Value> = a.table().iter().map(|row| rows_to_json(row)).collect();
    json!({
        "kind": "table",
        "dim": a.dim(),
        "table": table,
        "labels": a.labels(),
    })
}

fn get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    m.get(key)
        .ok_or_else(|| FormatError::Schema(format!("missing key {key:?}")))
}

fn get_usize(m: &Map<String, Value>, key: &str) -> Result<usize, FormatError> {
    get(m, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| FormatError::Schema(format!("{key:?} must be a non-negative integer")))
}

pub fn algebra_from_json(field: Field, v: &Value) -> Result<LocalAlgebra, FormatError> {
    let Value::Object(m) = v else {
        return schema("algebra descriptor must be an object");
    };
    match get(m, "kind")?.as_str() {
        Some("point") => Ok(LocalAlgebra::point(field)),
        Some("jet") => Ok(LocalAlgebra::jet(field, get_usize(m, "length")?)?),
        Some("monomial_quotient") => {
            let vars = get_usize(m, "vars")?;
            let Value::Array(leads) = get(m, "leads")? else {
                return schema("\"leads\" must be an array of exponent vectors");
            };
            let leads = leads
                .iter()
                .map(|l| {
                    l.as_array()
                        .and_then(|es| es.iter().map(|e| e.as_u64().map(|e| e as u32)).collect::<Option<Vec<_>>>())
                        .ok_or_else(|| FormatError::Schema("exponents must be non-negative integers".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LocalAlgebra::from_monomial_quotient(field, vars, &leads)?)
        }
        Some("table") => {
            let dim = get_usize(m, "dim")?;
            let Value::Array(rows) = get(m, "table")? else {
                return schema("\"table\" must be a nested array");
            };
            let table = rows
                .iter()
                .map(|row| rows_from_json(field, row))
                .collect::<Result<Vec<_>, _>>()?;
            if table.len() != dim {
                return schema(format!("\"dim\" is {dim} but the table has {} rows", table.len()));
            }
            let a = LocalAlgebra::from_table(field, table)?;
            match m.get("labels") {
                Some(Value::Array(ls)) => {
                    let labels = ls
                        .iter()
                        .map(|l| l.as_str().map(str::to_string))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| FormatError::Schema("labels must be strings".into()))?;
                    Ok(a.with_labels(labels)?)
                }
                Some(_) => schema("labels must be an array"),
                None => Ok(a),
            }
        }
        _ => schema("algebra kind must be one of table, jet, point, monomial_quotient"),
    }
}

pub fn scheme_to_json(r: &EmbeddedFiniteScheme) -> Value {
    let components: Vec<Value> = r
        .algebra()
        .components()
        .iter()
        .zip(r.ev())
        .map(|(a, m)| json!({ "algebra": algebra_to_json(a), "ev": mat_to_json(m) }))
        .collect();
    json!({
        "field": field_to_json(r.field()),
        "ambient_dim": r.ambient_dim(),
        "components": components,
    })
}

pub fn step_to_json(step: &ShrinkStep) -> Value {
    json!({
        "component": step.component,
        "socle_element": vector_to_json(&step.socle_element),
        "case": step.case.tag(),
        "degree_before": step.degree_before,
        "degree_after": step.degree_after,
    })
}

pub fn trace_to_json(trace: &ShrinkTrace) -> Value {
    json!({
        "steps": trace.steps.iter().map(step_to_json).collect::<Vec<_>>(),
        "initial_digest": trace.initial_digest,
        "final_digest": trace.final_digest,
    })
}

/// Final scheme, its digest, the trace, and the ideal of the input cutting it out.
pub fn reduction_to_json(red: &Reduction) -> Value {
    json!({
        "scheme": scheme_to_json(&red.scheme),
        "digest": scheme_digest(&red.scheme),
        "degree": red.scheme.degree(),
        "socdim": red.scheme.socdim(),
        "trace": trace_to_json(&red.trace),
        "ideal": red.ideal.parts().iter().map(subspace_to_json).collect::<Vec<_>>(),
    })
}

/// A parsed scheme file with its optional plane.
#[derive(Clone, Debug)]
pub struct SchemeFile {
    pub scheme: EmbeddedFiniteScheme,
    pub plane: Option<Subspace>,
}

/// Parses and validates a scheme document. With `field_override`, every
/// scalar is read in that field instead of the declared one.
pub fn scheme_from_json(v: &Value, field_override: Option<Field>) -> Result<SchemeFile, FormatError> {
    let Value::Object(m) = v else {
        return schema("scheme document must be an object");
    };
    let field = match field_override {
        Some(f) => f,
        None => field_from_json(get(m, "field")?)?,
    };
    let n = get_usize(m, "ambient_dim")?;
    let Value::Array(comps) = get(m, "components")? else {
        return schema("\"components\" must be an array");
    };
    let mut algebras = Vec::with_capacity(comps.len());
    let mut ev = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let Value::Object(cm) = c else {
            return schema(format!("component {i} must be an object"));
        };
        let a = algebra_from_json(field, get(cm, "algebra")?)?;
        let rows = rows_from_json(field, get(cm, "ev")?)?;
        if rows.len() != n {
            return schema(format!(
                "component {i}: \"ev\" has {} rows, ambient_dim is {n}",
                rows.len()
            ));
        }
        ev.push(Mat::from_rows(field, a.dim(), rows)?);
        algebras.push(a);
    }
    let algebra = SemilocalAlgebra::new(algebras)?;
    let scheme = EmbeddedFiniteScheme::new(n, algebra, ev)?;
    let plane = match m.get("plane") {
        Some(p) => Some(subspace_from_json(field, n, p)?),
        None => None,
    };
    Ok(SchemeFile { scheme, plane })
}

pub fn parse_scheme(text: &str, field_override: Option<Field>) -> Result<SchemeFile, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    scheme_from_json(&v, field_override)
}

/// Hex SHA-256 of the compact canonical serialization.
pub fn scheme_digest(r: &EmbeddedFiniteScheme) -> String {
    let text = serde_json::to_string(&scheme_to_json(r)).expect("JSON values serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Inline plane syntax: rows separated by `;`, entries by `,`.
pub fn parse_inline_rows(field: Field, s: &str) -> Result<Vec<Vec<Scalar>>, FormatError> {
    s.split(';')
        .filter(|row| !row.trim().is_empty())
        .map(|row| {
            row.split(',')
                .map(|x| {
                    let (n, d) = parse_fraction(x)?;
                    field
                        .fraction(&n, &d)
                        .ok_or_else(|| FormatError::Schema(format!("{x:?} is undefined in {field}")))
                })
                .collect()
        })
        .collect()
}
