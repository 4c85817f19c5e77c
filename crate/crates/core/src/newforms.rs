//! Newform eigenvalue packets: fixture ingestion, Galois-conjugate orbit
//! expansion, q-expansion reconstruction from eigenvalues, and the greedy
//! distinguishing-prime search.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::arith::{self, gcd};
use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::field::{compositum, Field, NfElement, NumberField, DEFAULT_DEGREE_LIMIT};
use crate::qseries::{QExpansion, SeriesMeta, Weight};
use crate::serial;

pub const NEWFORM_SCHEMA: &str = "shimdec-newforms-1";

/// Eigenvalue data of a single newform.
#[derive(Clone, Debug)]
pub struct NewformPacket {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub character: DirichletCharacter,
    pub field: NumberField,
    pub root_index: usize,
    /// Optional display name of the root for pretty output.
    pub root_label: Option<String>,
    /// a_p for primes p up to the stated bound.
    pub eigenvalues: BTreeMap<u64, NfElement>,
    pub prime_bound: u64,
}

impl NewformPacket {
    /// a_p, failing when p exceeds the stated bound.
    pub fn eigenvalue(&self, p: u64) -> Result<&NfElement> {
        self.eigenvalues.get(&p).ok_or(Error::MissingEigenvalue(p))
    }

    /// q-expansion reconstructed from the eigenvalues by multiplicativity and
    /// the prime-power recurrence a_{p^{e+1}} = a_p a_{p^e} - chi(p) p^{w-1} a_{p^{e-1}}.
    pub fn q_expansion(&self, prec: u64) -> Result<QExpansion<NumberField>> {
        for p in arith::primes_up_to(prec.saturating_sub(1)) {
            if !self.eigenvalues.contains_key(&p) {
                return Err(Error::MissingEigenvalue(p));
            }
        }
        let f = &self.field;
        let meta = SeriesMeta::new(Weight::Integral(self.weight), self.level, self.character.clone())?;
        let mut coeffs: Vec<NfElement> = vec![f.zero(); prec as usize];
        if prec > 1 {
            coeffs[1] = f.one();
        }
        for n in 2..prec {
            let facs = arith::factor(n);
            let (p, e) = facs[0];
            if facs.len() == 1 {
                if e == 1 {
                    coeffs[n as usize] = self.eigenvalues[&p].clone();
                } else {
                    let lam = &self.eigenvalues[&p];
                    let mut val = f.mul(lam, &coeffs[(n / p) as usize]);
                    let chi_p = self.character.value_in(p, f)?;
                    if !f.is_zero(&chi_p) {
                        let mut corr = f.mul(&chi_p, &coeffs[(n / (p * p)) as usize]);
                        corr = f.mul(
                            &corr,
                            &f.pow_u(&f.from_i64(p as i64), (self.weight - 1) as u64),
                        );
                        val = f.sub(&val, &corr);
                    }
                    coeffs[n as usize] = val;
                }
            } else {
                let pe = p.pow(e);
                coeffs[n as usize] = f.mul(&coeffs[pe as usize], &coeffs[(n / pe) as usize]);
            }
        }
        let mut out = QExpansion::new(f.clone(), meta, prec);
        for (n, c) in coeffs.into_iter().enumerate().skip(1) {
            out.set(n as u64, c);
        }
        Ok(out)
    }

    /// Checks the level and character divisibility constraints against an
    /// ambient decomposition job with integral level n_prime = N/2.
    pub fn check_attach(&self, n_prime: u64) -> Result<()> {
        if !n_prime.is_multiple_of(self.level) {
            return Err(Error::InvariantViolation {
                label: self.label.clone(),
                detail: format!("level {} does not divide N' = {n_prime}", self.level),
            });
        }
        let cond = self.character.conductor();
        if !self.level.is_multiple_of(cond) {
            return Err(Error::InvariantViolation {
                label: self.label.clone(),
                detail: format!("character conductor {cond} does not divide level {}", self.level),
            });
        }
        Ok(())
    }
}

/// Applies the nontrivial conjugation of a degree-2 field presented by
/// x^2 + b x + c: the designated root r maps to -b - r.
fn conjugate_element(field: &NumberField, e: &NfElement) -> NfElement {
    let defining = field.defining_poly();
    let b = crate::poly::Rat::from_integer(defining[1].clone());
    let u = &e.coords[0];
    let v = &e.coords[1];
    NfElement { coords: vec![u - &(v * &b), -v.clone()] }
}

/// Expands an orbit entry into one packet per root of its defining field.
///
/// Degree 1 returns the packet unchanged; degree 2 produces the designated
/// packet and its conjugate with labels suffixed by the root index. Higher
/// degrees require explicit per-embedding entries in the fixture.
pub fn conjugate_expand(orbit: NewformPacket) -> Result<Vec<NewformPacket>> {
    match orbit.field.degree() {
        1 => Ok(vec![orbit]),
        2 => {
            let mut second = orbit.clone();
            second.root_index = 1 - orbit.root_index;
            second.label = format!("{}.x{}", orbit.label, second.root_index);
            second.eigenvalues = orbit
                .eigenvalues
                .iter()
                .map(|(p, e)| (*p, conjugate_element(&orbit.field, e)))
                .collect();
            let mut first = orbit;
            first.label = format!("{}.x{}", first.label, first.root_index);
            Ok(vec![first, second])
        }
        d => Err(Error::UnsupportedDegree { label: orbit.label, degree: d }),
    }
}

/// Parses a fixture document into packets, expanding conjugate orbits.
pub fn parse_packets(doc: &Value) -> Result<Vec<NewformPacket>> {
    let schema = doc.get("schema").and_then(Value::as_str);
    if schema != Some(NEWFORM_SCHEMA) {
        return Err(Error::SchemaError(format!(
            "expected schema {NEWFORM_SCHEMA}, found {schema:?}"
        )));
    }
    let entries = doc
        .get("newforms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::SchemaError("document needs a newforms array".into()))?;
    let mut out = Vec::new();
    for entry in entries {
        let label = entry
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::SchemaError("packet needs label".into()))?
            .to_string();
        let level = entry
            .get("level")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::SchemaError(format!("packet {label} needs level")))?;
        let weight = entry
            .get("weight")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::SchemaError(format!("packet {label} needs weight")))?
            as u32;
        let character = DirichletCharacter::decode(
            entry
                .get("character")
                .ok_or_else(|| Error::SchemaError(format!("packet {label} needs character")))?,
            level,
        )?;
        let field = serial::field_from_json(
            entry
                .get("field_poly")
                .ok_or_else(|| Error::SchemaError(format!("packet {label} needs field_poly")))?,
        )?;
        let ap = entry
            .get("ap")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::SchemaError(format!("packet {label} needs ap table")))?;
        let mut eigenvalues = BTreeMap::new();
        let mut prime_bound = 0u64;
        for (k, v) in ap {
            let p: u64 = k
                .parse()
                .map_err(|_| Error::SchemaError(format!("bad prime index {k} in {label}")))?;
            if !arith::is_prime(p) {
                return Err(Error::SchemaError(format!("index {p} in {label} is not prime")));
            }
            eigenvalues.insert(p, serial::nf_element_from_json(v, &field)?);
            prime_bound = prime_bound.max(p);
        }
        let root_label = entry
            .get("root_label")
            .and_then(Value::as_str)
            .map(|s| s.to_string());
        let packet = NewformPacket {
            label,
            level,
            weight,
            character,
            field,
            root_index: entry.get("root_index").and_then(Value::as_u64).unwrap_or(0) as usize,
            root_label,
            eigenvalues,
            prime_bound,
        };
        if entry.get("root_index").is_some() || packet.field.degree() == 1 {
            out.push(packet);
        } else {
            out.extend(conjugate_expand(packet)?);
        }
    }
    Ok(out)
}

/// Ordered distinguishing primes, coprime to the ambient level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSet {
    pub primes: Vec<u64>,
}

/// Exact equality test of two packets' eigenvalues at p, comparing inside a
/// compositum when the packets live in different fields.
pub fn eigenvalues_equal(a: &NewformPacket, b: &NewformPacket, p: u64) -> Result<bool> {
    let ea = a.eigenvalue(p)?;
    let eb = b.eigenvalue(p)?;
    if a.field == b.field {
        return Ok(ea == eb);
    }
    let c = compositum(&a.field, &b.field, DEFAULT_DEGREE_LIMIT)?;
    let map_a = c.field.eval_poly(&ea.coords, &c.embed1);
    let map_b = c.field.eval_poly(&eb.coords, &c.embed2);
    Ok(map_a == map_b)
}

/// Greedy scan over primes p coprime to the level, keeping each prime that
/// separates at least one still-colliding pair, until all pairs separate.
///
/// `CannotDistinguish` reports the bound when eigenvalue data runs out first.
pub fn distinguishing_primes(
    packets: &[NewformPacket],
    level: u64,
    prime_bound: u64,
) -> Result<PrimeSet> {
    let m = packets.len();
    let mut unsplit: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut primes = Vec::new();
    for p in arith::primes_up_to(prime_bound) {
        if unsplit.is_empty() {
            break;
        }
        if gcd(p, level) != 1 {
            continue;
        }
        // does p split any currently-unsplit pair, with data available?
        let mut splits = Vec::new();
        let mut usable = true;
        for &(i, j) in &unsplit {
            if packets[i].eigenvalue(p).is_err() || packets[j].eigenvalue(p).is_err() {
                usable = false;
                break;
            }
            if !eigenvalues_equal(&packets[i], &packets[j], p)? {
                splits.push((i, j));
            }
        }
        if !usable {
            break;
        }
        if !splits.is_empty() {
            primes.push(p);
            unsplit.retain(|pair| !splits.contains(pair));
        }
    }
    if !unsplit.is_empty() {
        return Err(Error::CannotDistinguish(prime_bound));
    }
    Ok(PrimeSet { primes })
}
