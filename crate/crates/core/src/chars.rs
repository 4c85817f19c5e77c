//! Dirichlet characters with exact root-of-unity values.
//!
//! A character of modulus N and order m stores, for every unit residue, the
//! exponent e with value zeta_m^e; the value itself is realized inside the
//! cyclotomic field Q[x]/(Phi_m(x)). Non-units evaluate to zero. Products
//! and powers act on exponent tables, so no field arithmetic is ever needed
//! to combine characters.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{self, gcd, lcm, UnitGroup};
use crate::error::{Error, Result};
use crate::field::{Field, NfElement, NumberField};

/// Kronecker symbol (a | n), extended to all integers n.
///
/// Multiplicative in both arguments; agrees with the Legendre symbol for odd
/// prime n; (a | 2) follows the standard extension through a mod 8.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out twos from n
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => unreachable!(),
        }
    }
    // now n is odd and positive: Jacobi with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                1 | 7 => {}
                3 | 5 => result = -result,
                _ => unreachable!(),
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[derive(Debug)]
struct CharInner {
    modulus: u64,
    /// Exponent of the value group; values are zeta_order^e.
    order: u64,
    /// residue -> exponent, defined exactly on units of Z/modulus.
    exponents: BTreeMap<u64, u64>,
    /// Q[x]/(Phi_order), hosting the values.
    field: NumberField,
}

/// A Dirichlet character with exact cyclotomic values.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    inner: Arc<CharInner>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.modulus == other.inner.modulus
                && self.inner.order == other.inner.order
                && self.inner.exponents == other.inner.exponents)
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Builds a character from a raw exponent table after normalizing the
    /// order and checking complete multiplicativity on all unit pairs.
    fn from_exponents(modulus: u64, order: u64, exponents: BTreeMap<u64, u64>) -> Result<DirichletCharacter> {
        // normalize: shrink the order to the exponent actually generated
        let g = exponents
            .values()
            .fold(order, |acc, &e| gcd(acc, e));
        let (order, exponents) = if g > 1 {
            (order / g, exponents.into_iter().map(|(r, e)| (r, e / g)).collect())
        } else {
            (order, exponents)
        };
        let chi = DirichletCharacter {
            inner: Arc::new(CharInner {
                modulus,
                order,
                field: NumberField::cyclotomic(order.max(1)),
                exponents,
            }),
        };
        chi.check_multiplicative()?;
        Ok(chi)
    }

    fn check_multiplicative(&self) -> Result<()> {
        let n = self.inner.modulus;
        let units: Vec<u64> = self.inner.exponents.keys().copied().collect();
        let expected = if n == 1 { 1 } else { arith::euler_phi(n) };
        if units.len() as u64 != expected {
            return Err(Error::InvalidTable(format!(
                "table defines {} residues, (Z/{}Z)^x has {}",
                units.len(),
                n,
                expected
            )));
        }
        for &a in &units {
            if n > 1 && gcd(a, n) != 1 {
                return Err(Error::InvalidTable(format!("residue {a} not coprime to {n}")));
            }
            for &b in &units {
                let ab = if n == 1 { 0 } else { a * b % n };
                let ea = self.inner.exponents[&a];
                let eb = self.inner.exponents[&b];
                let eab = *self
                    .inner
                    .exponents
                    .get(&ab)
                    .ok_or_else(|| Error::InvalidTable(format!("residue {ab} missing")))?;
                if (ea + eb) % self.inner.order != eab {
                    return Err(Error::NotMultiplicative(format!(
                        "chi({a})chi({b}) != chi({ab}) mod {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The principal character modulo N.
    pub fn trivial(modulus: u64) -> DirichletCharacter {
        assert!(modulus >= 1);
        let mut exponents = BTreeMap::new();
        if modulus == 1 {
            exponents.insert(0, 0);
        } else {
            for a in 1..modulus {
                if gcd(a, modulus) == 1 {
                    exponents.insert(a, 0);
                }
            }
        }
        DirichletCharacter {
            inner: Arc::new(CharInner {
                modulus,
                order: 1,
                field: NumberField::cyclotomic(1),
                exponents,
            }),
        }
    }

    /// The character a -> (D | a) restricted modulo N.
    ///
    /// Rejects pairs where the symbol does not factor through Z/NZ: the
    /// symbol is periodic modulo 4|D|, so constancy on every unit progression
    /// a + kN across one full period certifies the restriction.
    pub fn kronecker(d: i64, modulus: u64) -> Result<DirichletCharacter> {
        if d == 0 {
            return Err(Error::InvalidTable("kronecker discriminant must be nonzero".into()));
        }
        assert!(modulus >= 1);
        let mut exponents = BTreeMap::new();
        if modulus == 1 {
            exponents.insert(0, 0);
            return DirichletCharacter::from_exponents(1, 1, exponents);
        }
        let period = 4 * d.unsigned_abs();
        let steps = period / modulus + 1;
        for a in 1..modulus {
            if gcd(a, modulus) != 1 {
                continue;
            }
            let v0 = kronecker_symbol(d, a as i64);
            for k in 1..=steps {
                let v = kronecker_symbol(d, (a + k * modulus) as i64);
                if v != v0 {
                    return Err(Error::NotMultiplicative(format!(
                        "kronecker({d}) is not periodic modulo {modulus}"
                    )));
                }
            }
            let e = match v0 {
                1 => 0,
                -1 => 1,
                _ => {
                    return Err(Error::NotMultiplicative(format!(
                        "kronecker({d}) vanishes on the unit {a} mod {modulus}"
                    )))
                }
            };
            exponents.insert(a, e);
        }
        DirichletCharacter::from_exponents(modulus, 2, exponents)
    }

    /// Builds a character from an explicit exponent table on the units.
    pub fn from_table(modulus: u64, order: u64, table: BTreeMap<u64, u64>) -> Result<DirichletCharacter> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        let table = table.into_iter().map(|(r, e)| (r % modulus.max(1), e % order)).collect();
        DirichletCharacter::from_exponents(modulus, order, table)
    }

    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Cyclotomic field Q(zeta_order) hosting the values.
    pub fn value_field(&self) -> &NumberField {
        &self.inner.field
    }

    /// Exponent e with chi(a) = zeta^e, or None when gcd(a, N) > 1.
    pub fn exponent(&self, a: u64) -> Option<u64> {
        if self.inner.modulus == 1 {
            return Some(0);
        }
        self.inner.exponents.get(&(a % self.inner.modulus)).copied()
    }

    /// chi(a) as an element of the value field (zero for non-units).
    pub fn value(&self, a: u64) -> NfElement {
        let f = &self.inner.field;
        match self.exponent(a) {
            None => f.zero(),
            Some(e) => f.pow_u(&f.gen(), e),
        }
    }

    /// chi(a) in a host field able to represent the values.
    pub fn value_in<F: Field>(&self, a: u64, host: &F) -> Result<F::Elem> {
        let zeta = host.root_of_unity(self.inner.order).ok_or_else(|| {
            Error::FieldMismatch(format!(
                "field cannot host character values of order {}",
                self.inner.order
            ))
        })?;
        Ok(match self.exponent(a) {
            None => host.zero(),
            Some(e) => host.pow_u(&zeta, e),
        })
    }

    /// chi(a) as a rational number, for characters of order dividing 2.
    pub fn rational_value(&self, a: u64) -> crate::Rat {
        use num_traits::{One, Zero};
        assert!(self.inner.order <= 2, "character has non-rational values");
        match self.exponent(a) {
            None => crate::Rat::zero(),
            Some(0) => crate::Rat::one(),
            Some(_) => -crate::Rat::one(),
        }
    }

    /// Is every value either 0 or 1, i.e. the principal character.
    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    pub fn is_even(&self) -> bool {
        if self.inner.modulus <= 2 {
            return true;
        }
        self.exponent(self.inner.modulus - 1) == Some(0)
    }

    pub fn is_odd(&self) -> bool {
        !self.is_even()
    }

    /// Smallest r | N such that the character is induced from modulus r.
    ///
    /// Uses the classical criterion: chi factors through modulus r exactly
    /// when chi(a) = 1 for every unit a with a = 1 (mod r).
    pub fn conductor(&self) -> u64 {
        let n = self.inner.modulus;
        if n == 1 {
            return 1;
        }
        'next: for r in arith::divisors(n) {
            let mut a = 1 + r;
            while a < n + 1 {
                let am = a % n;
                if am != 0 && gcd(am, n) == 1 && self.exponent(am) != Some(0) {
                    continue 'next;
                }
                a += r;
            }
            return r;
        }
        n
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.inner.modulus
    }

    /// The unique primitive character of modulus conductor inducing this one.
    pub fn primitive_inducing(&self) -> DirichletCharacter {
        let n = self.inner.modulus;
        let r = self.conductor();
        if r == n {
            return self.clone();
        }
        let mut exponents = BTreeMap::new();
        if r == 1 {
            exponents.insert(0, 0);
        } else {
            for u in 1..r {
                if gcd(u, r) != 1 {
                    continue;
                }
                // lift u to a residue coprime to n
                let mut a = u;
                while gcd(a, n) != 1 {
                    a += r;
                }
                exponents.insert(u, self.exponent(a % n).expect("unit value"));
            }
        }
        DirichletCharacter::from_exponents(r, self.inner.order, exponents)
            .expect("restriction of a character is a character")
    }

    /// Reinterprets the character at a larger modulus M with N | M.
    pub fn extend_to_modulus(&self, m: u64) -> Result<DirichletCharacter> {
        let n = self.inner.modulus;
        if !m.is_multiple_of(n) {
            return Err(Error::InvalidTable(format!("{n} does not divide {m}")));
        }
        if m == n {
            return Ok(self.clone());
        }
        let mut exponents = BTreeMap::new();
        if m == 1 {
            exponents.insert(0, 0);
        } else {
            for a in 1..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                exponents.insert(a, self.exponent(a % n.max(1)).expect("coprime residue"));
            }
        }
        DirichletCharacter::from_exponents(m, self.inner.order, exponents)
    }

    /// Pointwise product after extending both characters to lcm of the moduli.
    pub fn mul(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        let m = lcm(self.inner.modulus, other.inner.modulus).max(1);
        let a = self.extend_to_modulus(m)?;
        let b = other.extend_to_modulus(m)?;
        let order = lcm(a.inner.order, b.inner.order);
        let mut exponents = BTreeMap::new();
        for (&r, &ea) in a.inner.exponents.iter() {
            let eb = b.inner.exponents[&r];
            exponents.insert(r, (ea * (order / a.inner.order) + eb * (order / b.inner.order)) % order);
        }
        DirichletCharacter::from_exponents(m, order, exponents)
    }

    /// k-th power, exponent table arithmetic only.
    pub fn pow(&self, k: u64) -> DirichletCharacter {
        let order = self.inner.order;
        let exponents = self
            .inner
            .exponents
            .iter()
            .map(|(&r, &e)| (r, e * (k % order) % order))
            .collect();
        DirichletCharacter::from_exponents(self.inner.modulus, order, exponents)
            .expect("power of a character is a character")
    }

    /// Serializes to the fixture text encoding.
    pub fn encode(&self) -> serde_json::Value {
        if self.is_trivial() {
            return serde_json::Value::String("trivial".to_string());
        }
        if self.inner.order == 2 {
            // try to recognize a kronecker character for readability
            for d in kronecker_candidates(self.inner.modulus) {
                if let Ok(k) = DirichletCharacter::kronecker(d, self.inner.modulus) {
                    if k == *self {
                        return serde_json::Value::String(format!("kronecker:{d}"));
                    }
                }
            }
        }
        let table: BTreeMap<String, u64> =
            self.inner.exponents.iter().map(|(r, e)| (r.to_string(), *e)).collect();
        serde_json::json!({
            "modulus": self.inner.modulus,
            "order": self.inner.order,
            "table": table,
        })
    }

    /// Parses the fixture text encoding at a given modulus.
    pub fn decode(value: &serde_json::Value, modulus: u64) -> Result<DirichletCharacter> {
        match value {
            serde_json::Value::String(s) if s == "trivial" => Ok(DirichletCharacter::trivial(modulus)),
            serde_json::Value::String(s) if s.starts_with("kronecker:") => {
                let d: i64 = s["kronecker:".len()..]
                    .parse()
                    .map_err(|_| Error::SchemaError(format!("bad kronecker encoding {s}")))?;
                DirichletCharacter::kronecker(d, modulus)
            }
            serde_json::Value::Object(map) => {
                let m = map
                    .get("modulus")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| Error::SchemaError("character table needs modulus".into()))?;
                if m != modulus {
                    return Err(Error::SchemaError(format!(
                        "character modulus {m} does not match context {modulus}"
                    )));
                }
                let order = map
                    .get("order")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| Error::SchemaError("character table needs order".into()))?;
                let table = map
                    .get("table")
                    .and_then(|v| v.as_object())
                    .ok_or_else(|| Error::SchemaError("character table needs table".into()))?;
                let mut exps = BTreeMap::new();
                for (k, v) in table {
                    let r: u64 = k
                        .parse()
                        .map_err(|_| Error::SchemaError(format!("bad residue {k}")))?;
                    let e = v
                        .as_u64()
                        .ok_or_else(|| Error::SchemaError(format!("bad exponent for {k}")))?;
                    exps.insert(r, e);
                }
                DirichletCharacter::from_table(modulus, order, exps)
            }
            other => Err(Error::SchemaError(format!("unrecognized character encoding {other}"))),
        }
    }
}

fn kronecker_candidates(modulus: u64) -> Vec<i64> {
    let mut out = Vec::new();
    let m = modulus as i64;
    for d in 1..=4 * m {
        out.push(d);
        out.push(-d);
    }
    out
}

/// All characters of modulus n, enumerated through the unit group structure.
pub fn all_characters(n: u64) -> Vec<DirichletCharacter> {
    let group = UnitGroup::new(n);
    let k = group.generators.len();
    // discrete logs once per unit
    let mut dlogs: Vec<(u64, Vec<u64>)> = Vec::new();
    if n == 1 {
        dlogs.push((0, vec![]));
    } else {
        for a in 1..n {
            if gcd(a, n) == 1 {
                dlogs.push((a, group.dlog(a).expect("unit")));
            }
        }
    }
    let m = group.orders.iter().fold(1u64, |acc, &o| lcm(acc, o)).max(1);
    let mut out = Vec::new();
    let mut choice = vec![0u64; k];
    loop {
        let mut exponents = BTreeMap::new();
        for (a, dl) in &dlogs {
            let mut e = 0u64;
            for (j, &x) in dl.iter().enumerate() {
                e = (e + choice[j] * x % group.orders[j] * (m / group.orders[j])) % m;
            }
            exponents.insert(*a, e);
        }
        out.push(
            DirichletCharacter::from_exponents(n, m, exponents)
                .expect("generator exponents define a character"),
        );
        // next choice
        let mut j = 0;
        loop {
            if j == k {
                return out;
            }
            choice[j] += 1;
            if choice[j] < group.orders[j] {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Primitive odd characters of conductor exactly r.
pub fn primitive_odd_characters(r: u64) -> Vec<DirichletCharacter> {
    all_characters(r)
        .into_iter()
        .filter(|chi| chi.is_odd() && chi.is_primitive())
        .collect()
}
