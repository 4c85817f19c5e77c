//! Eisenstein series with exact constant terms: the weight-2 family on
//! Gamma_0(N) and the weight-1 series attached to an odd character, in both
//! rational and cyclotomic-coordinate forms.

use crate::dense::{CycRing, CycSeries, Dense};
use num_rational::BigRational as Rat;
use num_traits::Zero;
use shimdec_core::arith::divisors;
use shimdec_core::chars::DirichletCharacter;
use shimdec_core::poly::{rat, rat_frac};

/// E_2(z) - d E_2(dz), holomorphic of weight 2 on Gamma_0(d).
pub fn e2_diff(d: u64, prec: usize) -> Dense {
    let mut out = Dense::zeros(prec);
    out.c[0] = rat(1 - d as i64);
    for n in 1..prec as u64 {
        let mut v: i64 = -24 * divisors(n).iter().sum::<u64>() as i64;
        if n % d == 0 {
            v += 24 * d as i64 * divisors(n / d).iter().sum::<u64>() as i64;
        }
        out.c[n as usize] = rat(v);
    }
    out
}

/// Weight-2 series for a pair of equal real primitive characters psi:
/// coefficients sum_{e | n} psi(n/e) psi(e) e, zero constant term. Lands in
/// M_2(cond(psi)^2) with trivial nebentypus.
pub fn e2_pair_real(psi: &DirichletCharacter, prec: usize) -> Dense {
    assert!(psi.order() <= 2, "real character required");
    let mut out = Dense::zeros(prec);
    for n in 1..prec as u64 {
        let mut acc = Rat::zero();
        for e in divisors(n) {
            let a = psi.rational_value(n / e);
            let b = psi.rational_value(e);
            acc += a * b * rat(e as i64);
        }
        out.c[n as usize] = acc;
    }
    out
}

/// Generalized Bernoulli number B_{1, psi} = (1/r) sum_a psi(a) a, as
/// coordinates in Z[zeta] scaled by r (so the return value is r * B_{1,psi}).
fn scaled_b1(psi: &DirichletCharacter, ring: &CycRing) -> Vec<i64> {
    let r = psi.modulus();
    let scale = ring.order / psi.order();
    let mut acc = ring.zero();
    for a in 1..=r {
        if let Some(e) = psi.exponent(a) {
            let mut z = ring.zeta_pow(e * scale);
            for x in z.iter_mut() {
                *x *= a as i64;
            }
            ring.add_assign(&mut acc, &z);
        }
    }
    acc
}

/// 2r times the weight-1 Eisenstein series attached to (1, psi) for an odd
/// character psi of conductor r: constant term -r B_{1,psi}, coefficient at
/// n >= 1 equal to 2r sum_{d | n} psi(d). Scaling by 2r keeps coordinates
/// integral without changing any span.
pub fn e1_scaled(psi: &DirichletCharacter, ring: &CycRing, prec: usize) -> CycSeries {
    assert!(psi.is_odd() && psi.is_primitive(), "weight 1 needs a primitive odd character");
    assert!(ring.order.is_multiple_of(psi.order()), "ring must host the character values");
    let r = psi.modulus();
    let scale = ring.order / psi.order();
    let mut out = CycSeries::zeros(ring, prec);
    // constant term: 2r * (-B_{1,psi}/2) = -r B_{1,psi}
    let b1 = scaled_b1(psi, ring);
    out.c[0] = b1.iter().map(|x| -x).collect();
    for n in 1..prec as u64 {
        let mut acc = ring.zero();
        for d in divisors(n) {
            if let Some(e) = psi.exponent(d) {
                let z = ring.zeta_pow(e * scale);
                ring.add_assign(&mut acc, &z);
            }
        }
        for x in acc.iter_mut() {
            *x *= 2 * r as i64;
        }
        out.c[n as usize] = acc;
    }
    out
}

/// Rational form of `e1_scaled` for real odd characters.
pub fn e1_scaled_real(psi: &DirichletCharacter, prec: usize) -> Dense {
    assert!(psi.order() <= 2 && psi.is_odd() && psi.is_primitive());
    let r = psi.modulus();
    let mut out = Dense::zeros(prec);
    let mut b1 = Rat::zero();
    for a in 1..=r {
        b1 += psi.rational_value(a) * rat(a as i64);
    }
    out.c[0] = -b1;
    for n in 1..prec as u64 {
        let mut acc = Rat::zero();
        for d in divisors(n) {
            acc += psi.rational_value(d);
        }
        out.c[n as usize] = acc * rat(2 * r as i64);
    }
    out
}

/// The weight-1 dihedral cusp form of level 31: half the difference of the
/// theta series of the two reduced binary form classes of discriminant -31.
pub fn dihedral_31(prec: usize) -> Dense {
    let t1 = crate::etaq::binary_theta(1, 1, 8, prec);
    let t2 = crate::etaq::binary_theta(2, 1, 4, prec);
    t1.sub(&t2).scale(&rat_frac(1, 2))
}
