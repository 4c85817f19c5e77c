//! The theta subspace S_0(N, chi): single-variable theta series attached to
//! primitive odd characters, the generating set enumeration, and the closed
//! form eigenvalues of the T_{p^2} action on them.

use crate::arith;
use crate::chars::{self, DirichletCharacter};
use crate::error::{Error, Result};
use crate::field::{Field, NfElement, NumberField};
use crate::qseries::{QExpansion, SeriesMeta, Weight};

/// A member V(t) h_psi of the generating set: psi primitive odd of conductor
/// r, with 4 r^2 t dividing the ambient level.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaDescriptor {
    pub psi: DirichletCharacter,
    pub t: u64,
}

impl ThetaDescriptor {
    pub fn conductor(&self) -> u64 {
        self.psi.modulus()
    }
}

/// The series h_psi = sum_m psi(m) m q^{m^2}, tagged with weight 3/2,
/// level 4 r^2 and character kronecker(-4) * psi.
pub fn theta_series(psi: &DirichletCharacter, prec: u64) -> Result<QExpansion<NumberField>> {
    if !psi.is_odd() || !psi.is_primitive() {
        return Err(Error::NotPrimitiveOdd(format!(
            "character mod {} must be primitive and odd",
            psi.modulus()
        )));
    }
    let r = psi.modulus();
    let level = 4 * r * r;
    let character = DirichletCharacter::kronecker(-4, level)?
        .mul(&psi.extend_to_modulus(level)?)?;
    let meta = SeriesMeta::new(Weight::Half(3), level, character)?;
    let field = psi.value_field().clone();
    let mut out = QExpansion::new(field.clone(), meta, prec);
    let mut m = 1u64;
    while m * m < prec {
        let v = psi.value(m);
        if !field.is_zero(&v) {
            out.set(m * m, field.mul(&v, &field.from_i64(m as i64)));
        }
        m += 1;
    }
    Ok(out)
}

/// Meta for V(t) h_psi: level 4 r^2 t, character kronecker(-4t) * psi.
pub fn dilated_theta_meta(psi: &DirichletCharacter, t: u64) -> Result<SeriesMeta> {
    let r = psi.modulus();
    let level = 4 * r * r * t;
    let character = DirichletCharacter::kronecker(-4 * t as i64, level)?
        .mul(&psi.extend_to_modulus(level)?)?;
    SeriesMeta::new(Weight::Half(3), level, character)
}

/// The series V(t) h_psi at the requested precision.
pub fn dilated_theta_series(psi: &DirichletCharacter, t: u64, prec: u64) -> Result<QExpansion<NumberField>> {
    // generate enough of h_psi for the dilation to reach prec
    let base_prec = (prec - 1) / t + 2;
    let h = theta_series(psi, base_prec)?;
    let meta = dilated_theta_meta(psi, t)?;
    Ok(h.v_operator(t, meta).truncate(prec.min(t * (base_prec - 1) + 1)))
}

/// Enumerates the generating set of S_0(N, chi) for weight k/2.
///
/// Empty for k >= 5 by definition. For k = 3: all pairs (psi, t) with psi
/// primitive odd of conductor r, 4 r^2 t | N, and chi = kronecker(-4t) psi
/// as characters modulo N, sorted by t. The t values are pairwise distinct,
/// which the enumeration asserts.
pub fn enumerate_s0(level: u64, chi: &DirichletCharacter, k: u32) -> Result<Vec<ThetaDescriptor>> {
    if k.is_multiple_of(2) || k < 3 {
        return Err(Error::MetaMismatch(format!("weight numerator must be odd >= 3, got {k}")));
    }
    if !level.is_multiple_of(4) {
        return Err(Error::MetaMismatch(format!("4 must divide the level, got {level}")));
    }
    if !chi.is_even() {
        return Err(Error::MetaMismatch("character must be even".into()));
    }
    if k >= 5 {
        return Ok(vec![]);
    }
    let mut out: Vec<ThetaDescriptor> = Vec::new();
    for t in arith::divisors(level / 4) {
        // conductors r with 4 r^2 t | N
        let cap = level / (4 * t);
        let mut r = 1;
        while r * r <= cap {
            if cap.is_multiple_of(r * r) {
                for psi in chars::primitive_odd_characters(r) {
                    if matches_defining_identity(level, chi, &psi, t)? {
                        out.push(ThetaDescriptor { psi, t });
                    }
                }
            }
            r += 1;
        }
    }
    out.sort_by_key(|d| d.t);
    for w in out.windows(2) {
        assert_ne!(w[0].t, w[1].t, "theta descriptors must have distinct t");
    }
    Ok(out)
}

/// chi = kronecker(-4t) * psi tested on every unit modulo N.
fn matches_defining_identity(
    level: u64,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
) -> Result<bool> {
    let kro = match DirichletCharacter::kronecker(-4 * t as i64, level) {
        Ok(c) => c,
        Err(_) => return Ok(false),
    };
    let prod = kro.mul(&psi.extend_to_modulus(level)?)?;
    let chi_n = chi.extend_to_modulus(level)?;
    Ok(prod == chi_n)
}

/// q-expansions of the generating set at the requested precision, retagged
/// with the ambient level and character so they compose with the ambient
/// Hecke context directly.
///
/// Linear independence holds because the leading indices t are pairwise
/// distinct; the function asserts that structure on the computed series.
pub fn s0_basis(
    level: u64,
    chi: &DirichletCharacter,
    k: u32,
    prec: u64,
) -> Result<Vec<(ThetaDescriptor, QExpansion<NumberField>)>> {
    let descriptors = enumerate_s0(level, chi, k)?;
    let mut out = Vec::with_capacity(descriptors.len());
    for d in descriptors {
        let series = dilated_theta_series(&d.psi, d.t, prec)?;
        if let Some(lead) = series.leading_index() {
            assert_eq!(lead, d.t, "V(t) h_psi must lead at q^t");
        }
        let ambient_meta = SeriesMeta::new(Weight::Half(k), level, chi.clone())?;
        let mut retagged = QExpansion::new(series.field.clone(), ambient_meta, series.precision);
        for (&n, c) in series.iter() {
            retagged.set(n, c.clone());
        }
        out.push((d, retagged));
    }
    Ok(out)
}

/// Closed-form eigenvalue of T_{p^2} on V(t) h_psi:
/// psi(p) (1 + p) when p does not divide 2t, else psi(p) p.
pub fn theta_eigenvalue(psi: &DirichletCharacter, t: u64, p: u64) -> NfElement {
    let f = psi.value_field();
    let v = psi.value(p);
    let factor = if (2 * t).is_multiple_of(p) { p } else { 1 + p };
    f.mul(&v, &f.from_i64(factor as i64))
}

/// Integer square root by bisection.
fn isqrt(m: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, m.min(u32::MAX as u64) + 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if mid * mid <= m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Support of V(t) h_psi is contained in {t m^2}.
pub fn support_is_dilated_squares(series: &QExpansion<NumberField>, t: u64) -> bool {
    series.iter().all(|(&n, _)| {
        n % t == 0 && {
            let m = n / t;
            let s = isqrt(m);
            s * s == m
        }
    })
}

/// Checks a descriptor against the defining conditions for level and chi.
pub fn descriptor_is_valid(level: u64, chi: &DirichletCharacter, d: &ThetaDescriptor) -> Result<bool> {
    let r = d.conductor();
    if !d.psi.is_primitive() || !d.psi.is_odd() {
        return Ok(false);
    }
    if !level.is_multiple_of(4 * r * r * d.t) {
        return Ok(false);
    }
    matches_defining_identity(level, chi, &d.psi, d.t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn theta_chi_minus3() {
        let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
        let h = theta_series(&psi, 50).unwrap();
        // q - 2q^4 + 4q^16 - 5q^25 + 7q^49
        let expect = [(1u64, 1i64), (4, -2), (16, 4), (25, -5), (49, 7)];
        for (n, c) in expect {
            assert_eq!(h.coeff(n).unwrap().as_rational().unwrap(), rat(c), "n = {n}");
        }
        assert_eq!(h.iter().count(), 5);
        assert_eq!(h.meta.level, 36);
        assert_eq!(h.meta.weight, Weight::Half(3));
    }

    #[test]
    fn theta_chi_minus4() {
        let psi = DirichletCharacter::kronecker(-4, 4).unwrap();
        let h = theta_series(&psi, 30).unwrap();
        let expect = [(1u64, 1i64), (9, -3), (25, 5)];
        for (n, c) in expect {
            assert_eq!(h.coeff(n).unwrap().as_rational().unwrap(), rat(c), "n = {n}");
        }
        // non-square indices vanish
        for n in [2u64, 3, 5, 8, 12, 24] {
            assert!(h.field.is_zero(&h.coeff(n).unwrap()));
        }
    }

    #[test]
    fn theta_rejects_even_or_imprimitive() {
        let even = DirichletCharacter::kronecker(3, 12).unwrap();
        assert!(theta_series(&even, 10).is_err());
        let imprimitive = DirichletCharacter::kronecker(-4, 12).unwrap();
        assert!(theta_series(&imprimitive, 10).is_err());
    }

    #[test]
    fn enumerate_124_trivial_is_empty() {
        let chi = DirichletCharacter::trivial(124);
        assert!(enumerate_s0(124, &chi, 3).unwrap().is_empty());
    }

    #[test]
    fn enumerate_180_chi3() {
        let chi = DirichletCharacter::kronecker(3, 180).unwrap();
        let s = enumerate_s0(180, &chi, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].t, 1);
        assert_eq!(s[0].conductor(), 3);
        assert_eq!(s[0].psi, DirichletCharacter::kronecker(-3, 3).unwrap());
    }

    #[test]
    fn enumerate_k5_is_zero() {
        let chi = DirichletCharacter::trivial(36);
        assert!(enumerate_s0(36, &chi, 5).unwrap().is_empty());
    }

    #[test]
    fn enumerate_rejects_k1() {
        let chi = DirichletCharacter::trivial(36);
        assert!(enumerate_s0(36, &chi, 1).is_err());
    }

    #[test]
    fn s0_basis_180() {
        let chi = DirichletCharacter::kronecker(3, 180).unwrap();
        let basis = s0_basis(180, &chi, 3, 50).unwrap();
        assert_eq!(basis.len(), 1);
        let (d, series) = &basis[0];
        assert_eq!(d.t, 1);
        assert_eq!(series.coeff(1).unwrap().as_rational().unwrap(), rat(1));
        assert_eq!(series.coeff(49).unwrap().as_rational().unwrap(), rat(7));
        assert!(support_is_dilated_squares(series, 1));
    }

    #[test]
    fn s0_basis_124_empty() {
        let chi = DirichletCharacter::trivial(124);
        assert!(s0_basis(124, &chi, 3, 12).unwrap().is_empty());
    }

    #[test]
    fn enumerate_144_has_two_generators() {
        // level 144 with the character (12|.) = (3|.) admits t = 1 and t = 4
        // for the conductor-3 odd character, and nothing else
        let chi = DirichletCharacter::kronecker(12, 144).unwrap();
        let s = enumerate_s0(144, &chi, 3).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].t, s[0].conductor()), (1, 3));
        assert_eq!((s[1].t, s[1].conductor()), (4, 3));
        let basis = s0_basis(144, &chi, 3, 60).unwrap();
        assert_eq!(basis.len(), 2);
        // distinct leading indices witness independence
        assert_eq!(basis[0].1.leading_index(), Some(1));
        assert_eq!(basis[1].1.leading_index(), Some(4));
        // both generators share the closed-form eigenvalues, here at p = 5
        let ctx = crate::hecke::HeckeContext::new(3, 144, chi).unwrap();
        for (d, series) in &basis {
            let img = crate::hecke::t_p2_half(series, 5, &ctx).unwrap();
            let lam = theta_eigenvalue(&d.psi, d.t, 5);
            assert_eq!(img, series.truncate(img.precision).scale(&lam));
        }
    }

    #[test]
    fn eigenvalue_closed_form() {
        let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
        let f = psi.value_field();
        // p = 5: psi(5)(1 + 5) = -6
        assert_eq!(theta_eigenvalue(&psi, 1, 5), f.from_i64(-6));
        // p = 2 divides 2t: psi(2) * 2 = -2
        assert_eq!(theta_eigenvalue(&psi, 1, 2), f.from_i64(-2));
        // p = 7: psi(7)(1 + 7) = 8
        assert_eq!(theta_eigenvalue(&psi, 1, 7), f.from_i64(8));
    }

    #[test]
    fn exclusion_bound_one_plus_p() {
        // (1 + p)^2 > 4p for all primes p, the gap excluding theta eigenvalues
        // from the range allowed to newform eigenvalues
        for p in crate::arith::primes_up_to(97) {
            assert!((1 + p) * (1 + p) > 4 * p, "p = {p}");
        }
    }

    #[test]
    fn dilated_support() {
        let psi = DirichletCharacter::kronecker(-4, 4).unwrap();
        let v3 = dilated_theta_series(&psi, 3, 80).unwrap();
        // h has psi(5) * 5 = 5 at q^25, so V(3) h has 5 at q^75
        assert_eq!(v3.coeff(75).unwrap().as_rational().unwrap(), rat(5));
        assert!(support_is_dilated_squares(&v3, 3));
        // level 4 r^2 t with r = 4
        assert_eq!(v3.meta.level, 192);
    }
}
