//! Dense univariate polynomials over Q, used for defining polynomials of
//! number fields and the reduction arithmetic behind them.
//!
//! Coefficient vectors are little-endian: `p[i]` is the coefficient of x^i.
//! The zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(p: &[Rat]) -> bool {
    degree(p).is_none()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if is_zero(a) || is_zero(b) {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    let mut out: Vec<Rat> = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder with deg(r) < deg(b). Panics on zero divisor.
pub fn div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![Rat::zero(); rem.len().saturating_sub(db)];
    let lead_inv = b[db].recip();
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        let shift = dr - db;
        quot[shift] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[shift + i] -= t;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn make_monic(p: &[Rat]) -> Vec<Rat> {
    match degree(p) {
        None => vec![],
        Some(d) => scale(p, &p[d].recip()),
    }
}

/// Monic gcd via the Euclidean algorithm.
pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !is_zero(&r1) {
        let (_, r) = div_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    make_monic(&r0)
}

/// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
pub fn extended_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !is_zero(&r1) {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match degree(&r0) {
        None => (vec![], s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![];
    }
    let mut out: Vec<Rat> = p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * rat(i as i64 + 1))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// m-th cyclotomic polynomial, integer coefficients, computed by dividing
/// x^m - 1 by the cyclotomic polynomials of the proper divisors of m.
pub fn cyclotomic(m: u64) -> Vec<Rat> {
    assert!(m >= 1);
    let mut num = vec![Rat::zero(); m as usize + 1];
    num[0] = -Rat::one();
    num[m as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in crate::arith::divisors(m) {
        if d < m {
            den = mul(&den, &cyclotomic(d));
        }
    }
    let (q, r) = div_rem(&num, &den);
    debug_assert!(is_zero(&r));
    q
}

fn bigint_divisors(n: &BigInt) -> Vec<BigInt> {
    // small search is fine: constants of defining polynomials are tiny
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Outcome of the irreducibility screen for a monic integer polynomial.
pub enum IrreducibilityCheck {
    Proven,
    /// Screen passed but completeness is not guaranteed at this degree.
    Assumed,
}

/// Screens a monic integer polynomial for irreducibility over Q.
///
/// Checks squarefreeness, rational roots, and monic integer factors of
/// degree up to `max_factor_degree`. A factor search through degree
/// floor(deg/2) is a complete test; beyond the search budget the caller
/// is handed `Assumed` instead of a proof.
pub fn screen_irreducible(int_coeffs: &[BigInt], max_factor_degree: usize) -> Result<IrreducibilityCheck> {
    let p: Vec<Rat> = int_coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let d = degree(&p).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::InvalidPolynomial("constant polynomial".into()));
    }
    if !p[d].is_one() {
        return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
    }
    if d == 1 {
        return Ok(IrreducibilityCheck::Proven);
    }
    let g = gcd(&p, &derivative(&p));
    if degree(&g) != Some(0) {
        return Err(Error::Reducible("gcd with derivative is non-constant".into()));
    }
    // rational roots of a monic integer polynomial are integers dividing the constant
    if p[0].is_zero() {
        return Err(Error::Reducible("x divides".into()));
    }
    let c0 = int_coeffs[0].clone();
    for div in bigint_divisors(&c0) {
        for sgn in [BigInt::one(), -BigInt::one()] {
            let cand = Rat::from_integer(&div * &sgn);
            if eval(&p, &cand).is_zero() {
                return Err(Error::Reducible(format!("rational root {cand}")));
            }
        }
    }
    // search monic integer factors of small degree
    let mut complete = true;
    for k in 2..=max_factor_degree.min(d / 2) {
        let bound = coeff_bound(int_coeffs, k);
        complete &= search_complete(&bound);
        if let Some(f) = find_monic_factor(int_coeffs, k, &bound) {
            return Err(Error::Reducible(format!("degree-{k} factor {f:?}")));
        }
    }
    if max_factor_degree >= d / 2 && complete {
        Ok(IrreducibilityCheck::Proven)
    } else {
        Ok(IrreducibilityCheck::Assumed)
    }
}

/// Splits a monic integer polynomial into monic pieces using rational roots
/// and the small-degree factor search. Each returned piece is irreducible
/// when its degree is at most 2 * max_factor_degree + 1; pieces larger than
/// that passed the screen but are not certified (flag false).
pub fn factor_pieces(int_coeffs: &[BigInt], max_factor_degree: usize) -> Vec<(Vec<BigInt>, bool)> {
    let p: Vec<Rat> = int_coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let d = degree(&p).expect("nonzero polynomial");
    if d == 1 {
        return vec![(int_coeffs.to_vec(), true)];
    }
    // rational roots first
    if p[0].is_zero() {
        let mut rest: Vec<BigInt> = int_coeffs[1..].to_vec();
        let mut out = vec![(vec![BigInt::zero(), BigInt::one()], true)];
        out.extend(factor_pieces(&std::mem::take(&mut rest), max_factor_degree));
        return out;
    }
    for div in bigint_divisors(&int_coeffs[0]) {
        for sgn in [BigInt::one(), -BigInt::one()] {
            let root = &div * &sgn;
            if eval(&p, &Rat::from_integer(root.clone())).is_zero() {
                let lin = vec![-root, BigInt::one()];
                let linq: Vec<Rat> = lin.iter().map(|c| Rat::from_integer(c.clone())).collect();
                let (q, r) = div_rem(&p, &linq);
                debug_assert!(is_zero(&r));
                let qi: Vec<BigInt> = q.iter().map(|c| c.to_integer()).collect();
                let mut out = vec![(lin, true)];
                out.extend(factor_pieces(&qi, max_factor_degree));
                return out;
            }
        }
    }
    let mut complete = true;
    for k in 2..=max_factor_degree.min(d / 2) {
        let bound = coeff_bound(int_coeffs, k);
        complete &= search_complete(&bound);
        if let Some(f) = find_monic_factor(int_coeffs, k, &bound) {
            let fq: Vec<Rat> = f.iter().map(|c| Rat::from_integer(c.clone())).collect();
            let (q, r) = div_rem(&p, &fq);
            debug_assert!(is_zero(&r));
            let qi: Vec<BigInt> = q.iter().map(|c| c.to_integer()).collect();
            let mut out = factor_pieces(&f, max_factor_degree);
            out.extend(factor_pieces(&qi, max_factor_degree));
            return out;
        }
    }
    // no factor found within the search: irreducible only if the search
    // budget actually covered the Landau-Mignotte bound at every degree
    vec![(int_coeffs.to_vec(), max_factor_degree >= d / 2 && complete)]
}

/// Landau-Mignotte bound on the coefficients of a monic degree-k factor:
/// binom(k, floor(k/2)) times the 2-norm of the polynomial.
fn coeff_bound(int_coeffs: &[BigInt], k: usize) -> BigInt {
    let norm2: BigInt = int_coeffs.iter().map(|c| c * c).sum();
    // integer sqrt, rounded up
    let mut s = BigInt::one();
    while &s * &s < norm2 {
        s += 1;
    }
    let binom: i64 = match k {
        2 => 2,
        3 => 3,
        4 => 6,
        _ => 1 << k.min(20),
    };
    s * binom
}

/// Search budget: middle coefficients are scanned in [-CAP, CAP]. A true
/// Landau-Mignotte bound beyond the cap makes the search incomplete, which
/// the callers track and surface as an unproven screen.
const FACTOR_SEARCH_CAP: i64 = 60;

fn search_complete(bound: &BigInt) -> bool {
    bound <= &BigInt::from(FACTOR_SEARCH_CAP)
}

fn find_monic_factor(int_coeffs: &[BigInt], k: usize, bound: &BigInt) -> Option<Vec<BigInt>> {
    let p: Vec<Rat> = int_coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let c0 = int_coeffs[0].clone();
    let divs = bigint_divisors(&c0);
    let b: i64 = bound.min(&BigInt::from(FACTOR_SEARCH_CAP)).try_into().unwrap_or(FACTOR_SEARCH_CAP);
    let mut mids = vec![0i64; k - 1];
    loop {
        for tail in divs.iter() {
            for sgn in [1i64, -1] {
                let mut cand: Vec<Rat> = Vec::with_capacity(k + 1);
                cand.push(Rat::from_integer(tail * BigInt::from(sgn)));
                for m in &mids {
                    cand.push(rat(*m));
                }
                cand.push(Rat::one());
                let (_, r) = div_rem(&p, &cand);
                if is_zero(&r) {
                    let out: Vec<BigInt> = cand.iter().map(|c| c.to_integer()).collect();
                    return Some(out);
                }
            }
        }
        // advance mids through [-b, b]^{k-1}
        let mut i = 0;
        loop {
            if i == mids.len() {
                return None;
            }
            mids[i] += 1;
            if mids[i] <= b {
                break;
            }
            mids[i] = -b;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) / (x - 1) = x + 1
        let (q, r) = div_rem(&poly(&[-1, 0, 1]), &poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert!(is_zero(&r));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        // phi_30 has degree 8
        assert_eq!(cyclotomic(30), poly(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
    }

    #[test]
    fn irreducibility_screen() {
        let ints = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
        assert!(matches!(
            screen_irreducible(&ints(&[-1, -1, 1]), 4),
            Ok(IrreducibilityCheck::Proven)
        ));
        // x^2 - 1 factors
        assert!(screen_irreducible(&ints(&[-1, 0, 1]), 4).is_err());
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2) has no rational root but a quadratic factor
        assert!(screen_irreducible(&ints(&[4, 0, 0, 0, 1]), 4).is_err());
        // x^4 - 2x^2 + 9 is irreducible (compositum of Q(i) and Q(sqrt 2))
        assert!(matches!(
            screen_irreducible(&ints(&[9, 0, -2, 0, 1]), 4),
            Ok(IrreducibilityCheck::Proven)
        ));
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = poly(&[1, 0, 1]);
        let b = poly(&[-1, 1]);
        let (g, s, t) = extended_gcd(&a, &b);
        assert_eq!(g, poly(&[1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }
}
