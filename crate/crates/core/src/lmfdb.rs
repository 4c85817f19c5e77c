//! Client for fetching newform eigenvalue packets from an LMFDB-style web
//! service, with an on-disk cache so repeat queries never touch the network.
//!
//! The expected response contract is pinned here: a JSON object with a
//! `data` array whose entries carry `label`, `level`, `weight`, `character`,
//! `field_poly` and an `ap` table of power-basis coordinate arrays, matching
//! the committed fixture schema. Deviations raise `UpstreamSchemaChanged`.
//! Raw responses are stored verbatim next to a normalized packet file keyed
//! by (weight, character, level, prime bound); cache writes go through a
//! temp file and an atomic rename.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::newforms::{parse_packets, NewformPacket, NEWFORM_SCHEMA};

pub const ENV_BASE_URL: &str = "SHIMDEC_LMFDB_URL";
pub const ENV_CACHE: &str = "SHIMDEC_CACHE";
pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";

#[derive(Clone, Debug)]
pub struct LmfdbConfig {
    pub base_url: String,
    pub cache_dir: PathBuf,
    /// When set, cache misses are errors instead of network calls.
    pub offline: bool,
}

impl LmfdbConfig {
    /// Configuration from the environment, with platform-cache defaults.
    pub fn from_env() -> LmfdbConfig {
        let base_url =
            std::env::var(ENV_BASE_URL).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let cache_dir = std::env::var(ENV_CACHE).map(PathBuf::from).unwrap_or_else(|_| {
            if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
                PathBuf::from(xdg).join("shimdec")
            } else if let Ok(home) = std::env::var("HOME") {
                PathBuf::from(home).join(".cache").join("shimdec")
            } else {
                std::env::temp_dir().join("shimdec-cache")
            }
        });
        LmfdbConfig { base_url, cache_dir, offline: false }
    }

    fn key(&self, weight: u32, character: &str, level: u64, prime_bound: u64) -> String {
        format!("mf_w{weight}_c{character}_m{level}_p{prime_bound}")
    }

    pub fn raw_path(&self, weight: u32, character: &str, level: u64, prime_bound: u64) -> PathBuf {
        self.cache_dir
            .join(format!("raw_{}.json", self.key(weight, character, level, prime_bound)))
    }

    pub fn packets_path(
        &self,
        weight: u32,
        character: &str,
        level: u64,
        prime_bound: u64,
    ) -> PathBuf {
        self.cache_dir
            .join(format!("packets_{}.json", self.key(weight, character, level, prime_bound)))
    }
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().ok_or_else(|| Error::CacheCorrupt("cache path has no parent".into()))?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".tmp-{}-{}",
        std::process::id(),
        path.file_name().and_then(|s| s.to_str()).unwrap_or("entry")
    ));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Normalizes a pinned-contract response into the fixture packet schema.
fn normalize_response(raw: &Value, level: u64, weight: u32, prime_bound: u64) -> Result<Value> {
    let data = raw
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::UpstreamSchemaChanged("response has no data array".into()))?;
    let mut newforms = Vec::new();
    for entry in data {
        let label = entry
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::UpstreamSchemaChanged("entry without label".into()))?;
        let got_level = entry
            .get("level")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::UpstreamSchemaChanged(format!("{label}: no level")))?;
        if got_level != level {
            return Err(Error::UpstreamSchemaChanged(format!(
                "{label}: level {got_level} does not match query {level}"
            )));
        }
        let got_weight = entry
            .get("weight")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::UpstreamSchemaChanged(format!("{label}: no weight")))?;
        if got_weight as u32 != weight {
            return Err(Error::UpstreamSchemaChanged(format!(
                "{label}: weight {got_weight} does not match query {weight}"
            )));
        }
        let field_poly = entry
            .get("field_poly")
            .cloned()
            .ok_or_else(|| Error::UpstreamSchemaChanged(format!("{label}: no field_poly")))?;
        let ap = entry
            .get("ap")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::UpstreamSchemaChanged(format!("{label}: no ap table")))?;
        for p in arith::primes_up_to(prime_bound) {
            if !ap.contains_key(&p.to_string()) {
                return Err(Error::UpstreamSchemaChanged(format!(
                    "{label}: ap table missing p = {p} below the requested bound"
                )));
            }
        }
        let mut packet = json!({
            "label": label,
            "level": got_level,
            "weight": got_weight,
            "character": entry.get("character").cloned().unwrap_or_else(|| json!("trivial")),
            "field_poly": field_poly,
            "ap": ap,
        });
        if let Some(ri) = entry.get("root_index") {
            packet["root_index"] = ri.clone();
        }
        if let Some(rl) = entry.get("root_label") {
            packet["root_label"] = rl.clone();
        }
        newforms.push(packet);
    }
    Ok(json!({ "schema": NEWFORM_SCHEMA, "newforms": newforms }))
}

fn http_get(url: &str) -> Result<String> {
    let mut response = ureq::get(url)
        .call()
        .map_err(|e| Error::NetworkError(format!("GET {url}: {e}")))?;
    response
        .body_mut()
        .read_to_string()
        .map_err(|e| Error::NetworkError(format!("reading body of {url}: {e}")))
}

/// Fetches packets for every newform of the given weight and character with
/// level dividing `level_dividing`, eigenvalues for primes up to the bound.
///
/// Responses are served from the cache when present; the normalized packet
/// files are byte-stable across repeat calls.
pub fn lmfdb_fetch(
    config: &LmfdbConfig,
    weight: u32,
    character: &str,
    level_dividing: u64,
    prime_bound: u64,
) -> Result<Vec<NewformPacket>> {
    let mut packets = Vec::new();
    for level in arith::divisors(level_dividing) {
        let packets_path = config.packets_path(weight, character, level, prime_bound);
        let normalized: Value = if packets_path.exists() {
            let bytes = fs::read(&packets_path)?;
            serde_json::from_slice(&bytes)
                .map_err(|e| Error::CacheCorrupt(format!("{}: {e}", packets_path.display())))?
        } else {
            if config.offline {
                return Err(Error::NetworkError(format!(
                    "cache miss for weight {weight}, level {level} with networking disabled"
                )));
            }
            let url = format!(
                "{}/api/mf_newforms/?level={}&weight={}&character={}&prime_bound={}&_format=json",
                config.base_url, level, weight, character, prime_bound
            );
            let body = http_get(&url)?;
            let raw: Value = serde_json::from_str(&body)
                .map_err(|e| Error::UpstreamSchemaChanged(format!("non-JSON response: {e}")))?;
            let normalized = normalize_response(&raw, level, weight, prime_bound)?;
            atomic_write(&config.raw_path(weight, character, level, prime_bound), body.as_bytes())?;
            let pretty = serde_json::to_vec_pretty(&normalized)?;
            atomic_write(&packets_path, &pretty)?;
            normalized
        };
        packets.extend(parse_packets(&normalized)?);
    }
    Ok(packets)
}
