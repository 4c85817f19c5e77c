//! Exact scalar fields: the rationals and number fields Q[x]/(F(x)).
//!
//! All higher layers (series, matrices, characters) are generic over the
//! [`Field`] trait, so the same linear algebra runs over Q during fixture
//! work and over Q(b) or a compositum during eigenspace computations. The
//! trait passes a field context explicitly; elements stay plain data.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly;
use crate::poly::Rat;

/// Context object performing exact arithmetic on its element type.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_rat(&self, r: &Rat) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rat(&poly::rat(n))
    }
    /// A primitive root of unity of the given order, when the field can
    /// host one. Orders 1 and 2 always embed; larger orders need a
    /// cyclotomic presentation.
    fn root_of_unity(&self, order: u64) -> Option<Self::Elem> {
        match order {
            1 => Some(self.one()),
            2 => Some(self.neg(&self.one())),
            _ => None,
        }
    }
    fn pow_u(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field Q with `BigRational` elements (num-traits backed).
#[derive(Clone, PartialEq, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Result<Rat> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
}

/// Element of a number field: coordinates in the power basis 1, x, ..., x^{d-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct NfElement {
    pub coords: Vec<Rat>,
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl NfElement {
    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coords.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }
}

#[derive(Debug)]
struct NfInner {
    /// Monic integer defining polynomial, little-endian, length degree + 1.
    defining: Vec<BigInt>,
    /// Same polynomial over Q for reduction arithmetic.
    defining_q: Vec<Rat>,
    degree: usize,
    /// Set when the irreducibility screen could not finish a proof.
    irreducibility_assumed: bool,
    /// Some(m) when the field was constructed as Q(zeta_m); lets character
    /// values of order dividing m embed without root finding.
    cyclotomic_order: Option<u64>,
}

/// A number field K = Q[x]/(F(x)) with F monic, integral, irreducible.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<NfInner>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({:?})", self.inner.defining)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.defining == other.inner.defining
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Constructs a field after screening F for irreducibility.
    pub fn new(defining: Vec<BigInt>) -> Result<NumberField> {
        let check = poly::screen_irreducible(&defining, 4)?;
        let assumed = matches!(check, poly::IrreducibilityCheck::Assumed);
        Ok(Self::new_unchecked_flag(defining, assumed))
    }

    /// Constructor for polynomials known irreducible (cyclotomic, minimal
    /// polynomials produced by linear algebra).
    pub(crate) fn new_unchecked(defining: Vec<BigInt>) -> NumberField {
        Self::new_unchecked_flag(defining, false)
    }

    fn new_unchecked_flag(defining: Vec<BigInt>, assumed: bool) -> NumberField {
        let degree = defining.len() - 1;
        assert!(degree >= 1, "defining polynomial must have degree >= 1");
        assert!(defining[degree].is_one(), "defining polynomial must be monic");
        let defining_q = defining.iter().map(|c| Rat::from_integer(c.clone())).collect();
        NumberField {
            inner: Arc::new(NfInner {
                defining,
                defining_q,
                degree,
                irreducibility_assumed: assumed,
                cyclotomic_order: None,
            }),
        }
    }

    /// The rationals presented as Q[x]/(x).
    pub fn rationals() -> NumberField {
        NumberField::new_unchecked(vec![BigInt::zero(), BigInt::one()])
    }

    /// Q[x]/(Phi_m(x)), the m-th cyclotomic field.
    pub fn cyclotomic(m: u64) -> NumberField {
        let phi = poly::cyclotomic(m);
        let ints: Vec<BigInt> = phi.iter().map(|c| c.to_integer()).collect();
        let degree = ints.len() - 1;
        let defining_q = ints.iter().map(|c| Rat::from_integer(c.clone())).collect();
        NumberField {
            inner: Arc::new(NfInner {
                defining: ints,
                defining_q,
                degree,
                irreducibility_assumed: false,
                cyclotomic_order: Some(m),
            }),
        }
    }

    /// Order m when the field was constructed as Q(zeta_m).
    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.inner.cyclotomic_order
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.inner.defining
    }

    pub fn irreducibility_assumed(&self) -> bool {
        self.inner.irreducibility_assumed
    }

    /// The class of x, a designated root of the defining polynomial.
    pub fn gen(&self) -> NfElement {
        if self.degree() == 1 {
            // x = -c0 in Q[x]/(x + c0)
            let c0 = Rat::from_integer(self.inner.defining[0].clone());
            return NfElement { coords: vec![-c0] };
        }
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[1] = Rat::one();
        NfElement { coords }
    }

    pub fn element(&self, mut coords: Vec<Rat>) -> Result<NfElement> {
        if coords.len() > self.degree() {
            return Err(Error::FieldMismatch(format!(
                "coordinate vector of length {} in field of degree {}",
                coords.len(),
                self.degree()
            )));
        }
        coords.resize(self.degree(), Rat::zero());
        Ok(NfElement { coords })
    }

    fn check(&self, a: &NfElement) -> Result<()> {
        if a.coords.len() != self.degree() {
            return Err(Error::FieldMismatch(format!(
                "element of length {} in field of degree {}",
                a.coords.len(),
                self.degree()
            )));
        }
        Ok(())
    }

    /// Reduces a rational polynomial modulo the defining polynomial.
    fn reduce(&self, p: &[Rat]) -> NfElement {
        let (_, r) = if p.len() > self.degree() {
            poly::div_rem(p, &self.inner.defining_q)
        } else {
            (vec![], p.to_vec())
        };
        let mut coords = r;
        coords.resize(self.degree(), Rat::zero());
        NfElement { coords }
    }

    /// Evaluates a polynomial with coefficients in Q at an element of K.
    pub fn eval_poly(&self, p: &[Rat], at: &NfElement) -> NfElement {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, at);
            acc = self.add(&acc, &self.from_rat(c));
        }
        acc
    }

    /// Evaluates the integer defining polynomial of another field at `at`.
    pub fn eval_int_poly(&self, p: &[BigInt], at: &NfElement) -> NfElement {
        let q: Vec<Rat> = p.iter().map(|c| Rat::from_integer(c.clone())).collect();
        self.eval_poly(&q, at)
    }
}

impl Field for NumberField {
    type Elem = NfElement;

    fn zero(&self) -> NfElement {
        NfElement { coords: vec![Rat::zero(); self.degree()] }
    }

    fn one(&self) -> NfElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = Rat::one();
        NfElement { coords }
    }

    fn is_zero(&self, a: &NfElement) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }

    fn add(&self, a: &NfElement, b: &NfElement) -> NfElement {
        debug_assert!(self.check(a).is_ok() && self.check(b).is_ok());
        NfElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    fn sub(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    fn neg(&self, a: &NfElement) -> NfElement {
        NfElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    fn mul(&self, a: &NfElement, b: &NfElement) -> NfElement {
        debug_assert!(self.check(a).is_ok() && self.check(b).is_ok());
        if self.degree() == 1 {
            return NfElement { coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let prod = poly::mul(&a.coords, &b.coords);
        self.reduce(&prod)
    }

    fn inv(&self, a: &NfElement) -> Result<NfElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(NfElement { coords: vec![a.coords[0].recip()] });
        }
        // F irreducible and a nonzero, so gcd(a, F) = 1 = s*a + t*F
        let (g, s, _) = poly::extended_gcd(&a.coords, &self.inner.defining_q);
        if poly::degree(&g) != Some(0) {
            return Err(Error::FieldMismatch(
                "element not invertible; defining polynomial reducible?".into(),
            ));
        }
        Ok(self.reduce(&s))
    }

    fn from_rat(&self, r: &Rat) -> NfElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = r.clone();
        NfElement { coords }
    }

    fn root_of_unity(&self, order: u64) -> Option<NfElement> {
        match order {
            1 => Some(self.one()),
            2 => Some(self.neg(&self.one())),
            m => match self.inner.cyclotomic_order {
                Some(c) if c % m == 0 => Some(self.pow_u(&self.gen(), c / m)),
                _ => None,
            },
        }
    }
}

/// Ring embedding data produced by [`compositum`]: images of the designated
/// roots of the two input fields inside the compositum.
pub struct Compositum {
    pub field: NumberField,
    pub embed1: NfElement,
    pub embed2: NfElement,
}

/// Default cap on the compositum degree.
pub const DEFAULT_DEGREE_LIMIT: usize = 16;

/// Smallest common extension containing both fields, with verified
/// embeddings of the designated roots.
///
/// Searches primitive elements r1 + m*r2 in the tensor algebra and accepts a
/// candidate once its minimal polynomial is certified irreducible and both
/// roots are expressible in its powers. Identical presentations short-circuit
/// to the identity, matching the idempotence contract.
pub fn compositum(k1: &NumberField, k2: &NumberField, limit: usize) -> Result<Compositum> {
    if k1.degree() * k2.degree() > limit {
        return Err(Error::DegreeOverflow { got: k1.degree() * k2.degree(), limit });
    }
    if k1.degree() == 1 {
        let r1 = k2.from_rat(&k1.gen().coords[0]);
        return Ok(Compositum { field: k2.clone(), embed1: r1, embed2: k2.gen() });
    }
    if k2.degree() == 1 {
        let r2 = k1.from_rat(&k2.gen().coords[0]);
        return Ok(Compositum { field: k1.clone(), embed1: k1.gen(), embed2: r2 });
    }
    if k1 == k2 {
        return Ok(Compositum { field: k1.clone(), embed1: k1.gen(), embed2: k1.gen() });
    }

    let d1 = k1.degree();
    let d2 = k2.degree();
    let dim = d1 * d2;

    // multiplication by x and by y on the tensor basis x^i y^j
    let tensor_mul_x = |v: &[Rat]| -> Vec<Rat> {
        // multiply by x: shift i, reduce with F1
        let mut out = vec![Rat::zero(); dim];
        for j in 0..d2 {
            let row: Vec<Rat> = (0..d1).map(|i| v[i * d2 + j].clone()).collect();
            let mut shifted = vec![Rat::zero(); d1 + 1];
            for (i, c) in row.iter().enumerate() {
                shifted[i + 1] = c.clone();
            }
            let red = k1.reduce(&shifted);
            for i in 0..d1 {
                out[i * d2 + j] = red.coords[i].clone();
            }
        }
        out
    };
    let tensor_mul_y = |v: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim];
        for i in 0..d1 {
            let row: Vec<Rat> = (0..d2).map(|j| v[i * d2 + j].clone()).collect();
            let mut shifted = vec![Rat::zero(); d2 + 1];
            for (j, c) in row.iter().enumerate() {
                shifted[j + 1] = c.clone();
            }
            let red = k2.reduce(&shifted);
            for j in 0..d2 {
                out[i * d2 + j] = red.coords[j].clone();
            }
        }
        out
    };

    for m in 1..=24i64 {
        // gamma = x + m y as a tensor vector on the basis x^i y^j
        let mut gamma = vec![Rat::zero(); dim];
        gamma[d2] = Rat::one(); // x at (i, j) = (1, 0)
        gamma[1] = poly::rat(m); // m * y at (0, 1)

        // powers of gamma
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(dim + 1);
        let mut cur = vec![Rat::zero(); dim];
        cur[0] = Rat::one();
        powers.push(cur.clone());
        for _ in 0..dim {
            cur = tensor_mul_gamma(&cur, &gamma, &tensor_mul_x, &tensor_mul_y, d1, d2);
            powers.push(cur.clone());
        }

        // first linear dependence among 1, gamma, gamma^2, ...
        let Some((deg, minpoly)) = first_dependence(&powers) else {
            continue;
        };

        // need the full power basis of Q[gamma] to host both roots
        let basis = &powers[..deg];
        let x_vec = {
            let mut v = vec![Rat::zero(); dim];
            v[d2] = Rat::one();
            v
        };
        let Some(x_coords) = express_in_span(basis, &x_vec) else { continue };

        // gamma is an algebraic integer, so its minimal polynomial is integral
        let int_minpoly: Vec<BigInt> = match to_integer_poly(&minpoly) {
            Some(v) => v,
            None => continue,
        };

        // the tensor algebra may split; each irreducible piece of the minimal
        // polynomial is a candidate quotient field, gated by verifying that
        // the root images satisfy the defining polynomials exactly
        let mut pieces = poly::factor_pieces(&int_minpoly, 4);
        pieces.sort_by_key(|(h, _)| h.len());
        for (h, proven) in pieces {
            if h.len() < 2 {
                continue;
            }
            let field = NumberField::new_unchecked_flag(h, !proven);
            let embed1 = field.eval_poly(&x_coords, &field.gen());
            // gamma = r1 + m r2, so r2 = (gamma - r1) / m
            let embed2 = {
                let diff = field.sub(&field.gen(), &embed1);
                field.mul(&diff, &field.from_rat(&poly::rat_frac(1, m)))
            };
            let e1_ok = field.is_zero(&field.eval_int_poly(k1.defining_poly(), &embed1));
            let e2_ok = field.is_zero(&field.eval_int_poly(k2.defining_poly(), &embed2));
            if e1_ok && e2_ok {
                return Ok(Compositum { field, embed1, embed2 });
            }
        }
    }
    Err(Error::FieldMismatch(
        "no primitive element found for compositum within search budget".into(),
    ))
}

fn tensor_mul_gamma(
    v: &[Rat],
    _gamma: &[Rat],
    mul_x: &impl Fn(&[Rat]) -> Vec<Rat>,
    mul_y: &impl Fn(&[Rat]) -> Vec<Rat>,
    _d1: usize,
    _d2: usize,
) -> Vec<Rat> {
    // gamma = x + m*y encoded in _gamma: coefficient at (1,0) is 1, at (0,1) is m
    let vx = mul_x(v);
    let vy = mul_y(v);
    let m = _gamma[1].clone();
    vx.iter().zip(&vy).map(|(a, b)| a + b * &m).collect()
}

/// Finds the least k with powers[k] in the span of the earlier powers and
/// returns the monic dependence as a polynomial of degree k.
fn first_dependence(powers: &[Vec<Rat>]) -> Option<(usize, Vec<Rat>)> {
    let dim = powers[0].len();
    // incremental echelon over the powers
    let mut rows: Vec<Vec<Rat>> = Vec::new(); // echelonized [power | history]
    for (k, p) in powers.iter().enumerate() {
        // augmented vector: power coords followed by e_k history
        let mut aug = p.clone();
        let mut hist = vec![Rat::zero(); powers.len()];
        hist[k] = Rat::one();
        aug.extend(hist);
        // reduce against existing rows
        for row in &rows {
            let pivot = row.iter().take(dim).position(|c| !c.is_zero()).unwrap();
            if !aug[pivot].is_zero() {
                let factor = aug[pivot].clone() / row[pivot].clone();
                for (a, r) in aug.iter_mut().zip(row.iter()) {
                    *a -= &factor * r;
                }
            }
        }
        if aug.iter().take(dim).all(|c| c.is_zero()) {
            // the history part now holds p_i with sum p_i gamma^i = 0 and p_k = 1,
            // so it is the monic minimal polynomial of gamma
            let lead = aug[dim + k].clone();
            let p: Vec<Rat> = (0..=k).map(|i| aug[dim + i].clone() / lead.clone()).collect();
            return Some((k, p));
        }
        rows.push(aug);
    }
    None
}

fn express_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let mut aug = b.clone();
        let mut hist = vec![Rat::zero(); basis.len()];
        hist[k] = Rat::one();
        aug.extend(hist);
        for row in &rows {
            let pivot = row.iter().take(dim).position(|c| !c.is_zero()).unwrap();
            if !aug[pivot].is_zero() {
                let factor = aug[pivot].clone() / row[pivot].clone();
                for (a, r) in aug.iter_mut().zip(row.iter()) {
                    *a -= &factor * r;
                }
            }
        }
        rows.push(aug);
    }
    let mut t = target.to_vec();
    let mut coords = vec![Rat::zero(); basis.len()];
    for row in &rows {
        let pivot = row.iter().take(dim).position(|c| !c.is_zero()).unwrap();
        if !t[pivot].is_zero() {
            let factor = t[pivot].clone() / row[pivot].clone();
            for i in 0..dim {
                let d = &factor * &row[i];
                t[i] -= d;
            }
            for i in 0..basis.len() {
                let d = &factor * &row[dim + i];
                coords[i] += d;
            }
        }
    }
    if t.iter().all(|c| c.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

fn to_integer_poly(p: &[Rat]) -> Option<Vec<BigInt>> {
    if p.iter().any(|c| !c.denom().is_one()) {
        // clear denominators only if the result stays monic; minimal
        // polynomials of algebraic integers are integral, so a failure here
        // signals a non-integral primitive element and we skip it
        return None;
    }
    Some(p.iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(coeffs: &[i64]) -> NumberField {
        NumberField::new(coeffs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
    }

    #[test]
    fn golden_ratio_relation() {
        // K = Q[x]/(x^2 - x - 1): x * x = x + 1
        let k = field(&[-1, -1, 1]);
        let x = k.gen();
        let sq = k.mul(&x, &x);
        assert_eq!(sq, k.add(&x, &k.one()));
    }

    #[test]
    fn second_quadratic_relation() {
        // K = Q[x]/(x^2 - 2x - 2): x * x = 2x + 2
        let k = field(&[-2, -2, 1]);
        let x = k.gen();
        let sq = k.mul(&x, &x);
        let expect = k.add(&k.mul(&k.from_i64(2), &x), &k.from_i64(2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn additive_identity() {
        let k = field(&[-1, -1, 1]);
        let a = k.element(vec![poly::rat_frac(3, 7), poly::rat(2)]).unwrap();
        assert_eq!(k.add(&a, &k.zero()), a);
    }

    #[test]
    fn division_inverts() {
        let k = field(&[-2, 0, 1]);
        let a = k.element(vec![poly::rat(1), poly::rat(2)]).unwrap();
        let b = k.element(vec![poly::rat(3), poly::rat(-1)]).unwrap();
        let q = k.div(&a, &b).unwrap();
        assert_eq!(k.mul(&q, &b), a);
        assert!(matches!(k.div(&a, &k.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn root_satisfies_defining_poly() {
        for coeffs in [&[-1i64, -1, 1][..], &[-2, -2, 1], &[1, 0, 1], &[2, 0, 0, 1]] {
            let k = field(coeffs);
            let img = k.eval_int_poly(k.defining_poly(), &k.gen());
            assert!(k.is_zero(&img));
        }
    }

    #[test]
    fn compositum_trivial_extension() {
        let q = NumberField::rationals();
        let k = field(&[-1, -1, 1]);
        let c = compositum(&q, &k, DEFAULT_DEGREE_LIMIT).unwrap();
        assert_eq!(c.field, k);
        assert!(c.embed1.is_rational());
        assert_eq!(c.embed2, k.gen());
    }

    #[test]
    fn compositum_identical_presentations() {
        let k = field(&[-1, -1, 1]);
        let c = compositum(&k, &k, DEFAULT_DEGREE_LIMIT).unwrap();
        assert_eq!(c.field, k);
        assert_eq!(c.embed1, k.gen());
        assert_eq!(c.embed2, k.gen());
    }

    #[test]
    fn compositum_gaussian_sqrt2() {
        // Q(i) and Q(sqrt 2): compositum via i + sqrt2, minimal polynomial x^4 - 2x^2 + 9
        let ki = field(&[1, 0, 1]);
        let k2 = field(&[-2, 0, 1]);
        let c = compositum(&ki, &k2, DEFAULT_DEGREE_LIMIT).unwrap();
        assert_eq!(c.field.degree(), 4);
        let expect: Vec<BigInt> = [9i64, 0, -2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(c.field.defining_poly(), &expect[..]);
        assert!(c.field.is_zero(&c.field.eval_int_poly(ki.defining_poly(), &c.embed1)));
        assert!(c.field.is_zero(&c.field.eval_int_poly(k2.defining_poly(), &c.embed2)));
    }

    #[test]
    fn compositum_degree_limit() {
        let ki = field(&[1, 0, 1]);
        let k2 = field(&[-2, 0, 1]);
        assert!(matches!(
            compositum(&ki, &k2, 2),
            Err(Error::DegreeOverflow { got: 4, limit: 2 })
        ));
    }

    #[test]
    fn compositum_non_disjoint_same_field_different_presentation() {
        // Q(sqrt 2) presented by x^2 - 2 and by x^2 - 8: compositum has degree 2
        let a = field(&[-2, 0, 1]);
        let b = field(&[-8, 0, 1]);
        let c = compositum(&a, &b, DEFAULT_DEGREE_LIMIT).unwrap();
        assert_eq!(c.field.degree(), 2);
        assert!(c.field.is_zero(&c.field.eval_int_poly(a.defining_poly(), &c.embed1)));
        assert!(c.field.is_zero(&c.field.eval_int_poly(b.defining_poly(), &c.embed2)));
    }

    #[test]
    fn rejects_reducible() {
        assert!(NumberField::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]).is_err());
    }
}
