//! Truncated q-expansions over an exact field, with precision bookkeeping.
//!
//! Precision B means "coefficients known for n < B" (exclusive). Storage is
//! sparse; absent indices below the precision are zero. Half-integral weight
//! series start at n = 1, integral weight series may carry n = 0.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::arith;
use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{rat, rat_frac, Rat};

/// Weight tag: half-integral k/2 with k odd, or integral w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    /// Weight k/2; k odd, k >= 3.
    Half(u32),
    /// Integral weight w.
    Integral(u32),
}

impl Weight {
    /// The real weight as an exact rational.
    pub fn as_rat(&self) -> Rat {
        match self {
            Weight::Half(k) => rat_frac(*k as i64, 2),
            Weight::Integral(w) => rat(*w as i64),
        }
    }

    pub fn encode(&self) -> String {
        match self {
            Weight::Half(k) => format!("{k}/2"),
            Weight::Integral(w) => format!("{w}"),
        }
    }

    pub fn decode(s: &str) -> Result<Weight> {
        if let Some(num) = s.strip_suffix("/2") {
            let k: u32 = num
                .parse()
                .map_err(|_| Error::SchemaError(format!("bad weight {s}")))?;
            Ok(Weight::Half(k))
        } else {
            let w: u32 = s
                .parse()
                .map_err(|_| Error::SchemaError(format!("bad weight {s}")))?;
            Ok(Weight::Integral(w))
        }
    }
}

/// Level, weight and character attached to a series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMeta {
    pub weight: Weight,
    pub level: u64,
    pub character: DirichletCharacter,
}

impl SeriesMeta {
    pub fn new(weight: Weight, level: u64, character: DirichletCharacter) -> Result<SeriesMeta> {
        if let Weight::Half(k) = weight {
            if k % 2 == 0 || k < 3 {
                return Err(Error::MetaMismatch(format!(
                    "half-integral weight numerator must be odd and >= 3, got {k}"
                )));
            }
            if !level.is_multiple_of(4) {
                return Err(Error::MetaMismatch(format!(
                    "half-integral weight requires 4 | level, got {level}"
                )));
            }
        }
        Ok(SeriesMeta { weight, level, character })
    }
}

/// Truncated q-expansion with exact coefficients in a field F.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion<F: Field> {
    pub field: F,
    pub meta: SeriesMeta,
    /// Coefficients known for n < precision.
    pub precision: u64,
    coeffs: BTreeMap<u64, F::Elem>,
}

impl<F: Field> QExpansion<F> {
    pub fn new(field: F, meta: SeriesMeta, precision: u64) -> QExpansion<F> {
        assert!(precision >= 1);
        QExpansion { field, meta, precision, coeffs: BTreeMap::new() }
    }

    /// Sets a coefficient; entries at or beyond the precision are rejected.
    pub fn set(&mut self, n: u64, value: F::Elem) {
        assert!(n < self.precision, "coefficient index {n} >= precision {}", self.precision);
        if self.field.is_zero(&value) {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, value);
        }
    }

    /// Stored value or zero; `PrecisionExceeded` past the known range.
    pub fn coeff(&self, n: u64) -> Result<F::Elem> {
        if n >= self.precision {
            return Err(Error::PrecisionExceeded { index: n, precision: self.precision });
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(|| self.field.zero()))
    }

    /// Iterator over stored nonzero coefficients in index order.
    pub fn iter(&self) -> impl Iterator<Item = (&u64, &F::Elem)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least index with nonzero coefficient, if any.
    pub fn leading_index(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficients 0..prec as a dense vector (half weights never store 0).
    pub fn dense(&self, prec: u64) -> Result<Vec<F::Elem>> {
        (0..prec).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, precision: u64) -> QExpansion<F> {
        assert!(precision <= self.precision);
        let coeffs = self.coeffs.range(..precision).map(|(n, c)| (*n, c.clone())).collect();
        QExpansion { field: self.field.clone(), meta: self.meta.clone(), precision, coeffs }
    }

    fn check_meta(&self, other: &QExpansion<F>) -> Result<()> {
        if self.meta != other.meta {
            return Err(Error::MetaMismatch(format!(
                "incompatible series meta: {:?} vs {:?}",
                self.meta, other.meta
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("series over different fields".into()));
        }
        Ok(())
    }

    /// Coefficientwise sum with precision the minimum of the operands.
    pub fn add(&self, other: &QExpansion<F>) -> Result<QExpansion<F>> {
        self.check_meta(other)?;
        let prec = self.precision.min(other.precision);
        let mut out = QExpansion::new(self.field.clone(), self.meta.clone(), prec);
        for (&n, c) in self.coeffs.range(..prec) {
            out.set(n, c.clone());
        }
        for (&n, c) in other.coeffs.range(..prec) {
            let cur = out.coeff(n)?;
            out.set(n, self.field.add(&cur, c));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QExpansion<F>) -> Result<QExpansion<F>> {
        self.check_meta(other)?;
        let prec = self.precision.min(other.precision);
        let mut out = QExpansion::new(self.field.clone(), self.meta.clone(), prec);
        for (&n, c) in self.coeffs.range(..prec) {
            out.set(n, c.clone());
        }
        for (&n, c) in other.coeffs.range(..prec) {
            let cur = out.coeff(n)?;
            out.set(n, self.field.sub(&cur, c));
        }
        Ok(out)
    }

    /// Scalar multiple; the scalar lives in the coefficient field.
    pub fn scale(&self, c: &F::Elem) -> QExpansion<F> {
        let mut out = QExpansion::new(self.field.clone(), self.meta.clone(), self.precision);
        for (&n, v) in &self.coeffs {
            out.set(n, self.field.mul(v, c));
        }
        out
    }

    /// Index dilation: coefficient at t*n is the coefficient of self at n.
    ///
    /// Output precision is t*(prec - 1) + 1, the largest B with every index
    /// below B either known or off the support. The caller supplies the meta
    /// of the dilated series (level multiplies by t, character changes).
    pub fn v_operator(&self, t: u64, new_meta: SeriesMeta) -> QExpansion<F> {
        assert!(t >= 1);
        let prec = t * (self.precision - 1) + 1;
        let mut out = QExpansion::new(self.field.clone(), new_meta, prec);
        for (&n, c) in &self.coeffs {
            out.set(t * n, c.clone());
        }
        out
    }

    /// Maps coefficients into another field, preserving meta and precision.
    pub fn map_field<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> QExpansion<G> {
        let mut out = QExpansion::new(g.clone(), self.meta.clone(), self.precision);
        for (&n, c) in &self.coeffs {
            let img = f(c);
            out.set(n, img);
        }
        out
    }
}

/// Sturm-type certification bound: B = ceil((w / 12) * index(Gamma_0(N))) + 1.
///
/// Two forms of the given weight and level agreeing on all coefficients
/// n < B are equal. The half-integral case uses the real weight k/2 in the
/// classical bound (multiplication by a fixed weight-1/2 form embeds the
/// space into integral weight) plus one extra coefficient of headroom; this
/// is the single place to sharpen if a tighter bound is ever wanted.
pub fn sturm_bound(weight: &Weight, level: u64) -> u64 {
    if let Weight::Half(_) = weight {
        assert!(level.is_multiple_of(4), "half-integral weight requires 4 | level");
    }
    let mu = rat(arith::gamma0_index(level) as i64);
    let w = weight.as_rat();
    let bound = w * mu / rat(12);
    // exact ceiling of a rational
    let ceil = bound.ceil();
    ceil.to_integer().to_u64().expect("bound fits in u64") + 1
}
