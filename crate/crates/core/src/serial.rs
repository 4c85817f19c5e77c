//! JSON encodings shared by the fixture formats and report output.
//!
//! Field elements serialize as arrays of rational strings "p/q" (coordinates
//! in the power basis); fields serialize as the integer coefficient array of
//! the monic defining polynomial, constant term first. Series carry their
//! precision, a sparse coefficient map, the meta block and the field.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::field::{NfElement, NumberField};
use crate::poly::Rat;
use crate::qseries::{QExpansion, SeriesMeta, Weight};

pub fn rat_to_string(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| Error::SchemaError(format!("bad rational {s}: {e}")))
}

pub fn nf_element_to_json(e: &NfElement) -> Value {
    Value::Array(e.coords.iter().map(|c| Value::String(rat_to_string(c))).collect())
}

pub fn nf_element_from_json(v: &Value, field: &NumberField) -> Result<NfElement> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::SchemaError("field element must be an array of rationals".into()))?;
    let coords: Result<Vec<Rat>> = arr
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::SchemaError("field element entries must be strings".into()))
                .and_then(rat_from_str)
        })
        .collect();
    field.element(coords?)
}

/// Integer coefficient array [c0, ..., c_{d-1}, 1] of the defining polynomial.
pub fn field_to_json(f: &NumberField) -> Value {
    Value::Array(f.defining_poly().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn field_from_json(v: &Value) -> Result<NumberField> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::SchemaError("field polynomial must be an array".into()))?;
    let coeffs: Result<Vec<BigInt>> = arr
        .iter()
        .map(|c| match c {
            Value::String(s) => BigInt::from_str(s)
                .map_err(|e| Error::SchemaError(format!("bad integer {s}: {e}"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::SchemaError(format!("bad integer {n}"))),
            other => Err(Error::SchemaError(format!("bad polynomial entry {other}"))),
        })
        .collect();
    NumberField::new(coeffs?)
}

pub fn meta_to_json(meta: &SeriesMeta) -> Value {
    json!({
        "N": meta.level,
        "weight": meta.weight.encode(),
        "character": meta.character.encode(),
    })
}

pub fn meta_from_json(v: &Value) -> Result<SeriesMeta> {
    let level = v
        .get("N")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::SchemaError("meta needs N".into()))?;
    let weight = Weight::decode(
        v.get("weight")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::SchemaError("meta needs weight".into()))?,
    )?;
    let character = DirichletCharacter::decode(
        v.get("character")
            .ok_or_else(|| Error::SchemaError("meta needs character".into()))?,
        level,
    )?;
    SeriesMeta::new(weight, level, character)
}

pub fn series_to_json(s: &QExpansion<NumberField>) -> Value {
    let coeffs: Map<String, Value> = s
        .iter()
        .map(|(n, c)| (n.to_string(), nf_element_to_json(c)))
        .collect();
    json!({
        "precision": s.precision,
        "coeffs": coeffs,
        "meta": meta_to_json(&s.meta),
        "field_poly": field_to_json(&s.field),
    })
}

pub fn series_from_json(v: &Value) -> Result<QExpansion<NumberField>> {
    let field = field_from_json(
        v.get("field_poly")
            .ok_or_else(|| Error::SchemaError("series needs field_poly".into()))?,
    )?;
    series_from_json_in_field(v, &field)
}

/// Parses a series whose coefficients live in a caller-supplied field.
pub fn series_from_json_in_field(v: &Value, field: &NumberField) -> Result<QExpansion<NumberField>> {
    let precision = v
        .get("precision")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::SchemaError("series needs precision".into()))?;
    let meta = meta_from_json(
        v.get("meta")
            .ok_or_else(|| Error::SchemaError("series needs meta".into()))?,
    )?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::SchemaError("series needs coeffs".into()))?;
    let mut out = QExpansion::new(field.clone(), meta, precision);
    let mut sorted: BTreeMap<u64, &Value> = BTreeMap::new();
    for (k, val) in coeffs {
        let n: u64 = k
            .parse()
            .map_err(|_| Error::SchemaError(format!("bad coefficient index {k}")))?;
        if n >= precision {
            return Err(Error::SchemaError(format!(
                "coefficient index {n} at or beyond precision {precision}"
            )));
        }
        sorted.insert(n, val);
    }
    for (n, val) in sorted {
        out.set(n, nf_element_from_json(val, field)?);
    }
    Ok(out)
}
