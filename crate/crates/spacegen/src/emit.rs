//! Writers for the committed fixture files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use shimdec_core::decomp::{AmbientSpace, Claims};
use shimdec_core::field::{NfElement, NumberField};
use shimdec_core::newforms::NEWFORM_SCHEMA;
use shimdec_core::qseries::QExpansion;
use shimdec_core::serial;

pub fn write_json(path: &Path, value: &Value) {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, text).unwrap();
    println!("wrote {}", path.display());
}

pub fn write_space(path: &Path, space: &AmbientSpace) {
    write_json(path, &space.to_json());
}

pub fn write_series(path: &Path, series: &QExpansion<NumberField>) {
    write_json(path, &serial::series_to_json(series));
}

pub struct PacketSpec {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub character: String,
    pub field: NumberField,
    /// None marks a Galois orbit entry the parser expands.
    pub root_index: Option<u64>,
    pub root_label: Option<String>,
    pub ap: BTreeMap<u64, NfElement>,
}

pub fn write_newforms(path: &Path, packets: &[PacketSpec]) {
    let entries: Vec<Value> = packets
        .iter()
        .map(|p| {
            let ap: serde_json::Map<String, Value> = p
                .ap
                .iter()
                .map(|(prime, v)| (prime.to_string(), serial::nf_element_to_json(v)))
                .collect();
            let mut entry = json!({
                "label": p.label,
                "level": p.level,
                "weight": p.weight,
                "character": p.character,
                "field_poly": serial::field_to_json(&p.field),
                "ap": ap,
            });
            if let Some(ri) = p.root_index {
                entry["root_index"] = json!(ri);
            }
            if let Some(rl) = &p.root_label {
                entry["root_label"] = json!(rl);
            }
            entry
        })
        .collect();
    write_json(path, &json!({ "schema": NEWFORM_SCHEMA, "newforms": entries }));
}

/// Assembles a claims block for a spot-check fixture.
pub fn claims(
    summands: Vec<(String, Vec<QExpansion<NumberField>>)>,
    s0: Vec<QExpansion<NumberField>>,
    root_embeddings: Vec<(String, NfElement)>,
) -> Claims {
    Claims {
        summands: summands.into_iter().collect(),
        s0,
        root_embeddings: root_embeddings.into_iter().collect(),
    }
}
