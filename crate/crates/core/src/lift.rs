//! The Shimura lift as a finite Dirichlet convolution, the Euler-product
//! expansion attached to a joint eigenform, and the comparison check
//! between the two.

use std::collections::BTreeMap;

use crate::arith::{self, is_prime, is_squarefree};
use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hecke::HeckeContext;
use crate::qseries::{QExpansion, SeriesMeta, Weight};

/// Square-free index t together with the twisting character psi_t mod tN:
/// psi_t(m) = chi(m) (-1 | m)^lambda (t | m).
#[derive(Clone, Debug)]
pub struct LiftContext {
    pub t: u64,
    pub hecke: HeckeContext,
    pub psi_t: DirichletCharacter,
}

impl LiftContext {
    pub fn new(t: u64, hecke: HeckeContext) -> Result<LiftContext> {
        if !is_squarefree(t) {
            return Err(Error::TNotSquarefree(t));
        }
        let modulus = t * hecke.level;
        let chi = hecke.character.extend_to_modulus(modulus)?;
        let mut psi_t = chi;
        if hecke.lambda() % 2 == 1 {
            // (-1 | m)^lambda contributes kronecker(-4) for odd lambda
            psi_t = psi_t.mul(&DirichletCharacter::kronecker(-4, modulus)?)?;
        }
        if t > 1 {
            psi_t = psi_t.mul(&kronecker_t(t, modulus)?)?;
        }
        Ok(LiftContext { t, hecke, psi_t })
    }
}

/// (t | .) as a character modulo `modulus`; for t = 1 the principal one.
fn kronecker_t(t: u64, modulus: u64) -> Result<DirichletCharacter> {
    DirichletCharacter::kronecker(t as i64, modulus)
}

/// Largest output precision the lift supports: indices n with t n^2 < prec.
pub fn lift_output_precision(input_prec: u64, t: u64) -> u64 {
    let mut b = 1u64;
    while t * b * b < input_prec {
        b += 1;
    }
    b
}

/// The Shimura lift: A_t(n) = sum_{d | n} psi_t(d) d^{lambda - 1} a_{t (n/d)^2},
/// tagged with weight k - 1, level N/2 and character chi^2.
pub fn shimura_lift<F: Field>(f: &QExpansion<F>, lc: &LiftContext) -> Result<QExpansion<F>> {
    let ctx = &lc.hecke;
    match &f.meta.weight {
        Weight::Half(k) if *k == ctx.k => {}
        w => {
            return Err(Error::MetaMismatch(format!(
                "series weight {w:?} does not match lift context k = {}",
                ctx.k
            )))
        }
    }
    let out_prec = lift_output_precision(f.precision, lc.t);
    if out_prec < 2 {
        return Err(Error::PrecisionTooLow { needed: 4 * lc.t + 1, have: f.precision });
    }
    let field = &f.field;
    let lambda = ctx.lambda();
    let new_level = ctx.level / 2;
    let chi_sq = ctx.character.pow(2).extend_to_modulus(ctx.level)?.primitive_inducing();
    let chi_sq = chi_sq.extend_to_modulus(lcm_level(chi_sq.modulus(), new_level))?;
    let meta = SeriesMeta::new(Weight::Integral(ctx.k - 1), new_level, chi_sq)?;
    let mut out = QExpansion::new(field.clone(), meta, out_prec);
    for n in 1..out_prec {
        let mut acc = field.zero();
        for d in arith::divisors(n) {
            let psi = lc.psi_t.value_in(d, field)?;
            if field.is_zero(&psi) {
                continue;
            }
            let a = f.coeff(lc.t * (n / d) * (n / d))?;
            if field.is_zero(&a) {
                continue;
            }
            let mut term = field.mul(&psi, &a);
            term = field.mul(&term, &field.pow_u(&field.from_i64(d as i64), (lambda - 1) as u64));
            acc = field.add(&acc, &term);
        }
        out.set(n, acc);
    }
    Ok(out)
}

fn lcm_level(a: u64, b: u64) -> u64 {
    arith::lcm(a.max(1), b.max(1))
}

/// Multiplicative expansion from Hecke eigenvalues:
/// A_0(1) = 1, A_0(p) = lambda_p, and
/// A_0(p^{e+1}) = lambda_p A_0(p^e) - chi^2(p) p^{k-2} A_0(p^{e-1}).
pub fn euler_product_series<F: Field>(
    field: &F,
    eigenvalues: &BTreeMap<u64, F::Elem>,
    chi_sq: &DirichletCharacter,
    k: u32,
    prec: u64,
) -> Result<QExpansion<F>> {
    for p in arith::primes_up_to(prec.saturating_sub(1)) {
        if !eigenvalues.contains_key(&p) {
            return Err(Error::MissingEigenvalue(p));
        }
    }
    let meta = SeriesMeta::new(Weight::Integral(k - 1), chi_sq.modulus(), chi_sq.clone())?;
    let mut coeffs: Vec<F::Elem> = vec![field.zero(); prec as usize];
    if prec > 1 {
        coeffs[1] = field.one();
    }
    // fill prime powers by the quadratic recurrence, then spread by multiplicativity
    for n in 2..prec {
        let facs = arith::factor(n);
        if facs.len() == 1 {
            let (p, e) = facs[0];
            if e == 1 {
                coeffs[n as usize] = eigenvalues[&p].clone();
            } else {
                let lam = &eigenvalues[&p];
                let prev = coeffs[(n / p) as usize].clone();
                let mut val = field.mul(lam, &prev);
                let chi_val = chi_sq.value_in(p, field)?;
                if !field.is_zero(&chi_val) {
                    let prev2 = coeffs[(n / (p * p)) as usize].clone();
                    let mut corr = field.mul(&chi_val, &prev2);
                    corr = field.mul(&corr, &field.pow_u(&field.from_i64(p as i64), (k - 2) as u64));
                    val = field.sub(&val, &corr);
                }
                coeffs[n as usize] = val;
            }
        } else {
            let (p, e) = facs[0];
            let pe = p.pow(e);
            let rest = n / pe;
            coeffs[n as usize] = field.mul(&coeffs[pe as usize], &coeffs[rest as usize]);
        }
    }
    let mut out = QExpansion::new(field.clone(), meta, prec);
    for (n, c) in coeffs.into_iter().enumerate().skip(1) {
        out.set(n as u64, c);
    }
    Ok(out)
}

/// Whether Sh_t(f) / a_t equals the Euler-product expansion attached to the
/// supplied eigenvalues on the common precision range.
pub fn lift_of_eigenform_check<F: Field>(
    f: &QExpansion<F>,
    lc: &LiftContext,
    eigenvalues: &BTreeMap<u64, F::Elem>,
) -> Result<bool> {
    let field = f.field.clone();
    let a_t = f.coeff(lc.t)?;
    if field.is_zero(&a_t) {
        return Err(Error::ZeroLeadingCoefficient(lc.t));
    }
    let lifted = shimura_lift(f, lc)?;
    let chi_sq = lifted.meta.character.clone();
    let euler = euler_product_series(&field, eigenvalues, &chi_sq, lc.hecke.k, lifted.precision)?;
    let normalized = lifted.scale(&field.inv(&a_t)?);
    for n in 1..lifted.precision {
        if normalized.coeff(n)? != euler.coeff(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Eigenvalue table for a theta generator, for all primes below the bound.
pub fn theta_eigenvalue_table(
    psi: &DirichletCharacter,
    t: u64,
    bound: u64,
) -> BTreeMap<u64, crate::field::NfElement> {
    let mut out = BTreeMap::new();
    for p in arith::primes_up_to(bound) {
        debug_assert!(is_prime(p));
        out.insert(p, crate::theta::theta_eigenvalue(psi, t, p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::rat;
    use crate::theta;

    #[test]
    fn lift_of_zero_series_errors_on_leading_coefficient() {
        let chi = DirichletCharacter::trivial(4);
        let ctx = HeckeContext::new(3, 4, chi.clone()).unwrap();
        let lc = LiftContext::new(1, ctx).unwrap();
        let meta = SeriesMeta::new(Weight::Half(3), 4, chi).unwrap();
        let f: QExpansion<Rationals> = QExpansion::new(Rationals, meta, 30);
        // the lift itself maps zero to zero
        let lifted = shimura_lift(&f, &lc).unwrap();
        assert!(lifted.is_zero());
        let evs = BTreeMap::new();
        assert!(matches!(
            lift_of_eigenform_check(&f, &lc, &evs),
            Err(Error::ZeroLeadingCoefficient(1))
        ));
    }

    #[test]
    fn psi_t_matches_its_defining_product() {
        // psi_t(m) = chi(m) (-1 | m)^lambda (t | m) pointwise on units
        use crate::chars::kronecker_symbol;
        let chi = DirichletCharacter::kronecker(3, 180).unwrap();
        let ctx = HeckeContext::new(3, 180, chi.clone()).unwrap(); // lambda = 1
        for t in [1u64, 2, 5] {
            let lc = LiftContext::new(t, ctx.clone()).unwrap();
            let modulus = t * 180;
            for m in 1..=60u64 {
                let expect = kronecker_symbol(3, m as i64)
                    * kronecker_symbol(-1, m as i64)
                    * kronecker_symbol(t as i64, m as i64)
                    * if crate::arith::gcd(m, modulus) == 1 { 1 } else { 0 };
                let got = lc.psi_t.value_in(m, &Rationals).unwrap();
                assert_eq!(got, rat(expect), "t = {t}, m = {m}");
            }
        }
    }

    #[test]
    fn rejects_non_squarefree_t() {
        let chi = DirichletCharacter::trivial(4);
        let ctx = HeckeContext::new(3, 4, chi).unwrap();
        assert!(matches!(LiftContext::new(4, ctx), Err(Error::TNotSquarefree(4))));
    }

    #[test]
    fn euler_product_basics() {
        // A_0(1) = 1 and A_0(p^2) = lambda_p^2 - chi^2(p) p^{k-2}
        let chi_sq = DirichletCharacter::trivial(18);
        let mut evs: BTreeMap<u64, crate::Rat> = BTreeMap::new();
        for (p, v) in [(2u64, -2i64), (3, 0), (5, 6), (7, -16), (11, 12), (13, 38), (17, -126), (19, 20), (23, 168)] {
            evs.insert(p, rat(v));
        }
        let s = euler_product_series(&Rationals, &evs, &chi_sq, 5, 26).unwrap();
        assert_eq!(s.coeff(1).unwrap(), rat(1));
        assert_eq!(s.coeff(5).unwrap(), rat(6));
        // p = 5 coprime to 18: A_0(25) = 36 - 1 * 5^3 = -89
        assert_eq!(s.coeff(25).unwrap(), rat(-89));
        // p = 2 divides 18: A_0(4) = lambda_2^2 = 4
        assert_eq!(s.coeff(4).unwrap(), rat(4));
        // multiplicativity
        assert_eq!(
            s.coeff(10).unwrap(),
            &s.coeff(2).unwrap() * &s.coeff(5).unwrap()
        );
    }

    #[test]
    fn missing_eigenvalue_is_reported() {
        let chi_sq = DirichletCharacter::trivial(18);
        let mut evs: BTreeMap<u64, crate::Rat> = BTreeMap::new();
        evs.insert(2, rat(-2));
        assert!(matches!(
            euler_product_series(&Rationals, &evs, &chi_sq, 5, 10),
            Err(Error::MissingEigenvalue(3))
        ));
    }

    #[test]
    fn theta_lift_satisfies_euler_identity() {
        // f = V(1) h_{chi_-3} is a joint eigenform with closed-form eigenvalues;
        // both sides of the identity are computable exactly
        let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
        let f = theta::dilated_theta_series(&psi, 1, 1700).unwrap();
        let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
        let lc = LiftContext::new(1, ctx).unwrap();
        let evs = theta_eigenvalue_table(&psi, 1, 50);
        assert!(lift_of_eigenform_check(&f, &lc, &evs).unwrap());
    }

    #[test]
    fn perturbed_eigenform_fails_check() {
        let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
        let mut f = theta::dilated_theta_series(&psi, 1, 1700).unwrap();
        // corrupt a_25
        let field = f.field.clone();
        f.set(25, field.from_i64(99));
        let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
        let lc = LiftContext::new(1, ctx).unwrap();
        let evs = theta_eigenvalue_table(&psi, 1, 50);
        assert!(!lift_of_eigenform_check(&f, &lc, &evs).unwrap());
    }

    #[test]
    fn lift_linearity() {
        let psi = DirichletCharacter::kronecker(-4, 4).unwrap();
        let f = theta::dilated_theta_series(&psi, 1, 600).unwrap();
        let g = theta::dilated_theta_series(&psi, 1, 600).unwrap().scale(&f.field.from_i64(5));
        let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
        let lc = LiftContext::new(1, ctx).unwrap();
        let both = shimura_lift(&f.add(&g).unwrap(), &lc).unwrap();
        let separate = shimura_lift(&f, &lc)
            .unwrap()
            .add(&shimura_lift(&g, &lc).unwrap())
            .unwrap();
        assert_eq!(both, separate);
    }

    #[test]
    fn lift_commutes_with_hecke_on_theta_generators() {
        // Sh_t(T_{p^2} f) = T_p(Sh_t f) for all p, including p | N
        for (d, t) in [(-4i64, 1u64), (-3, 1), (-3, 2), (-4, 3)] {
            let psi = DirichletCharacter::kronecker(d, d.unsigned_abs()).unwrap();
            let f = theta::dilated_theta_series(&psi, t, 9000).unwrap();
            let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
            for lift_t in [1u64, 2] {
                let lc = LiftContext::new(lift_t, ctx.clone()).unwrap();
                for p in [2u64, 3, 5, 7] {
                    let lhs = {
                        let tf = crate::hecke::t_p2_half(&f, p, &ctx).unwrap();
                        shimura_lift(&tf, &lc).unwrap()
                    };
                    let rhs = {
                        let sf = shimura_lift(&f, &lc).unwrap();
                        crate::hecke::t_p_integral(&sf, p, ctx.k - 1, &sf.meta.character).unwrap()
                    };
                    let common = lhs.precision.min(rhs.precision);
                    assert!(common >= 2, "no common range for p = {p}, t = {lift_t}");
                    for n in 1..common {
                        assert_eq!(
                            lhs.coeff(n).unwrap(),
                            rhs.coeff(n).unwrap(),
                            "psi = kronecker({d}), V({t}), lift t = {lift_t}, p = {p}, n = {n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_lifts_force_vanishing_coefficients() {
        // if Sh_t(f) = 0 for all square-free t up to the bound, every a_{t j^2}
        // with t j^2 in range is zero, hence f = 0 on the range
        let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
        let f = theta::dilated_theta_series(&psi, 1, 200).unwrap();
        let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
        let mut any_nonzero = false;
        for t in 1..=10u64 {
            if !is_squarefree(t) {
                continue;
            }
            let lc = LiftContext::new(t, ctx.clone()).unwrap();
            if let Ok(l) = shimura_lift(&f, &lc) {
                any_nonzero |= !l.is_zero();
            }
        }
        assert!(any_nonzero, "nonzero series must have some nonzero lift");
    }
}
