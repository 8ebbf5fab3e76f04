//! JSON encodings shared by the command-line tool.
//!
//! - quiver: `{"vertices": [..], "arrows": [{"id", "source", "target", "weight", "dual"}]}`,
//!   weights are integers or `"inf"`.
//! - J-ring element: `[{"word": "abc", "coeff": "2"}]`.
//! - path-algebra element: `[{"path": "a>b,b>a", "coeff": "1/2"}]`; stationary paths are `e:<vertex>`.
//! - representation: `{"quiver", "field": {"modulus": null | "x^2 + x + 1"}, "dims": {vertex: n},
//!   "maps": {arrow: [[entry, ..], ..]}}`. The matrix of an arrow `s -> t` is listed row by row
//!   with `dim t` rows and `dim s` columns; it acts on column vectors, and a path `a_1 .. a_k`
//!   acts as `M_{a_k} .. M_{a_1}`. Entries are rational strings `p/q`, or residue lists
//!   `[c0, c1, ..]` over an extension field.
//! - witness: `{"rep": representation, "subrep": {vertex: [basis vector, ..]}}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::diagram::{CoxeterDiagram, DiagramError, Weight};
use crate::jring::JElement;
use crate::quiver::{ArrowSpec, GDQuiver, QuiverError};
use crate::rep::{Field, Matrix, RepError, Representation, Scalar, SubRep, Subspace, Witness};
use crate::rewrite::AlgebraElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn malformed(s: &str) -> FormatError {
    FormatError::Malformed(s.to_string())
}

fn field_str<'v>(v: &'v Value, key: &str) -> Result<&'v str, FormatError> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| malformed(&format!("missing string `{key}`")))
}

fn weight_to_json(w: Weight) -> Value {
    match w {
        Weight::Finite(m) => Value::from(m),
        Weight::Infinite => Value::from("inf"),
    }
}

fn weight_from_json(v: &Value) -> Result<Weight, FormatError> {
    if let Some(m) = v.as_u64() {
        return Ok(Weight::Finite(u32::try_from(m).map_err(|_| malformed("weight too large"))?));
    }
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| malformed("weight must be an integer or \"inf\""))
}

pub fn quiver_to_json(q: &GDQuiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| {
            json!({
                "id": a.id,
                "source": q.vertices()[a.source],
                "target": q.vertices()[a.target],
                "weight": weight_to_json(a.weight),
                "dual": q.arrow(a.dual).id,
            })
        })
        .collect();
    json!({ "vertices": q.vertices(), "arrows": arrows })
}

pub fn quiver_from_json(v: &Value) -> Result<GDQuiver, FormatError> {
    let vertices = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `vertices`"))?
        .iter()
        .map(|x| x.as_str().map(String::from).ok_or_else(|| malformed("vertex names must be strings")))
        .collect::<Result<Vec<_>, _>>()?;
    let specs = v
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `arrows`"))?
        .iter()
        .map(|a| {
            let w = weight_from_json(a.get("weight").ok_or_else(|| malformed("missing `weight`"))?)?;
            Ok(ArrowSpec::new(field_str(a, "id")?, field_str(a, "source")?, field_str(a, "target")?, w, field_str(a, "dual")?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(GDQuiver::new(vertices, specs)?)
}

pub fn jelement_to_json(x: &JElement, d: &CoxeterDiagram) -> Value {
    Value::Array(x.terms().map(|(w, c)| json!({ "word": d.format_word(w), "coeff": c.to_string() })).collect())
}

pub fn jelement_from_json(v: &Value, d: &CoxeterDiagram) -> Result<JElement, FormatError> {
    let mut x = JElement::zero();
    for t in v.as_array().ok_or_else(|| malformed("expected a list of terms"))? {
        let w = d.parse_word(field_str(t, "word")?)?;
        let c = field_str(t, "coeff")?.parse().map_err(|_| malformed("bad integer coefficient"))?;
        x.add_term(w, c);
    }
    Ok(x)
}

pub fn algebra_to_json(x: &AlgebraElement, q: &GDQuiver) -> Value {
    Value::Array(x.terms().map(|(p, c)| json!({ "path": q.format_path(p), "coeff": c.to_string() })).collect())
}

pub fn algebra_from_json(v: &Value, q: &GDQuiver) -> Result<AlgebraElement, FormatError> {
    let mut x = AlgebraElement::zero();
    for t in v.as_array().ok_or_else(|| malformed("expected a list of terms"))? {
        let p = q.parse_path(field_str(t, "path")?)?;
        let c = field_str(t, "coeff")?.parse().map_err(|_| malformed("bad rational coefficient"))?;
        x.add_term(p, c);
    }
    Ok(x)
}

fn field_to_json(k: &Field) -> Value {
    json!({ "modulus": k.modulus().map(|m| m.to_string()) })
}

fn field_from_json(v: &Value) -> Result<Field, FormatError> {
    match v.get("modulus") {
        None | Some(Value::Null) => Ok(Field::rationals()),
        Some(Value::String(s)) => Ok(Field::parse(s)?),
        Some(_) => Err(malformed("modulus must be a string or null")),
    }
}

fn scalar_to_json(x: &Scalar) -> Value {
    match x.as_rational() {
        Some(r) => Value::from(r.to_string()),
        None => Value::Array(x.residues().iter().map(|c| Value::from(c.to_string())).collect()),
    }
}

fn scalar_from_json(v: &Value, k: &Field) -> Result<Scalar, FormatError> {
    match v {
        Value::String(s) => Ok(k.parse_scalar(s)?),
        Value::Number(n) => Ok(k.parse_scalar(&n.to_string())?),
        Value::Array(items) => {
            let parts = items
                .iter()
                .map(|c| c.as_str().map(String::from).or_else(|| c.as_i64().map(|n| n.to_string())))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| malformed("residues must be rational strings"))?;
            Ok(k.parse_scalar(&format!("[{}]", parts.join(",")))?)
        }
        _ => Err(malformed("bad matrix entry")),
    }
}

fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

fn vector_from_json(v: &Value, k: &Field) -> Result<Vec<Scalar>, FormatError> {
    v.as_array().ok_or_else(|| malformed("expected a vector"))?.iter().map(|x| scalar_from_json(x, k)).collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(&m.row(i))).collect())
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize, k: &Field) -> Result<Matrix, FormatError> {
    let list = v.as_array().ok_or_else(|| malformed("expected a matrix"))?;
    if list.len() != rows {
        return Err(malformed(&format!("expected {rows} rows, found {}", list.len())));
    }
    let data = list.iter().map(|r| vector_from_json(r, k)).collect::<Result<Vec<_>, _>>()?;
    if data.iter().any(|r| r.len() != cols) {
        return Err(malformed(&format!("expected {cols} columns")));
    }
    if rows == 0 {
        return Ok(Matrix::zero(0, cols, k));
    }
    Ok(Matrix::from_rows(data, k))
}

pub fn representation_to_json(m: &Representation) -> Value {
    let q = m.quiver();
    let dims: Map<String, Value> = q.vertices().iter().zip(m.dims()).map(|(v, &n)| (v.clone(), Value::from(n))).collect();
    let maps: Map<String, Value> = q.arrows().iter().zip(m.maps()).map(|(a, x)| (a.id.clone(), matrix_to_json(x))).collect();
    json!({ "quiver": quiver_to_json(q), "field": field_to_json(m.field()), "dims": dims, "maps": maps })
}

pub fn representation_from_json(v: &Value) -> Result<Representation, FormatError> {
    let q = quiver_from_json(v.get("quiver").ok_or_else(|| malformed("missing `quiver`"))?)?;
    let k = field_from_json(v.get("field").unwrap_or(&Value::Null))?;
    let dims_v = v.get("dims").and_then(Value::as_object).ok_or_else(|| malformed("missing `dims`"))?;
    let dims = q
        .vertices()
        .iter()
        .map(|name| {
            dims_v.get(name).and_then(Value::as_u64).map(|n| n as usize).ok_or_else(|| malformed(&format!("no dimension for {name}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let maps_v = v.get("maps").and_then(Value::as_object).ok_or_else(|| malformed("missing `maps`"))?;
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let x = maps_v.get(&a.id).ok_or_else(|| malformed(&format!("no matrix for {}", a.id)))?;
            matrix_from_json(x, dims[a.target], dims[a.source], &k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation::new(q, k, dims, maps)?)
}

pub fn subrep_to_json(s: &SubRep, q: &GDQuiver) -> Value {
    let m: Map<String, Value> = q
        .vertices()
        .iter()
        .zip(&s.spaces)
        .map(|(v, sp)| (v.clone(), Value::Array(sp.basis().iter().map(|b| vector_to_json(b)).collect())))
        .collect();
    Value::Object(m)
}

pub fn subrep_from_json(v: &Value, m: &Representation) -> Result<SubRep, FormatError> {
    let obj = v.as_object().ok_or_else(|| malformed("expected an object of bases"))?;
    let k = m.field();
    let spaces = m
        .quiver()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let basis = match obj.get(name) {
                None => Vec::new(),
                Some(b) => b
                    .as_array()
                    .ok_or_else(|| malformed("expected a list of vectors"))?
                    .iter()
                    .map(|x| vector_from_json(x, k))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            if basis.iter().any(|b| b.len() != m.dim(i)) {
                return Err(malformed(&format!("vector of the wrong length at {name}")));
            }
            Ok(Subspace::span(&basis, m.dim(i), k))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(SubRep { spaces })
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({ "rep": representation_to_json(&w.rep), "subrep": subrep_to_json(&w.subrep, w.rep.quiver()) })
}

pub fn witness_from_json(v: &Value) -> Result<Witness, FormatError> {
    let rep = representation_from_json(v.get("rep").ok_or_else(|| malformed("missing `rep`"))?)?;
    let subrep = subrep_from_json(v.get("subrep").ok_or_else(|| malformed("missing `subrep`"))?, &rep)?;
    Ok(Witness { rep, subrep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::double_quiver;
    use crate::rewrite::PolynomialFamily;

    #[test]
    fn quiver_round_trip() {
        let d = CoxeterDiagram::new(["a", "b", "c"], [("a", "b", Weight::Finite(3)), ("b", "c", Weight::Infinite)]).unwrap();
        let q = double_quiver(&d);
        assert_eq!(quiver_from_json(&quiver_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn witness_round_trip() {
        let d = CoxeterDiagram::dihedral(Weight::Infinite);
        let w = crate::rep::witness_nonsemisimple(&d, &Field::rationals().int(3), &PolynomialFamily::POWER).unwrap();
        assert_eq!(witness_from_json(&witness_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn extension_entries_round_trip() {
        let k = Field::parse("x^2+x+1").unwrap();
        let w = k.generator().unwrap();
        let q = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(7)));
        let m = Representation::new(q, k.clone(), vec![1, 1], vec![Matrix::identity(1, &k), Matrix::scalar(1, &w)]).unwrap();
        assert_eq!(representation_from_json(&representation_to_json(&m)).unwrap(), m);
    }
}
