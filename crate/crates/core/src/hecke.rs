//! Coefficient-level Hecke operators: T_{p^2} on half-integral weight
//! expansions, T_p on integral weight expansions, and exact matrix
//! representations on a supplied basis.
//!
//! The general T_{p^2} coefficient rule used here is
//!
//!   b_n = a_{p^2 n} + chi(p) ((-1)^lambda n | p) p^{lambda - 1} a_n
//!         + chi(p)^2 p^{k-2} a_{n / p^2}
//!
//! with lambda = (k-1)/2, the last term present only when p^2 | n, and
//! chi(p^2) taken as chi(p)^2 so that it vanishes for p dividing the level.
//! Three independent checks pin this rule: the closed-form theta eigenvalues,
//! the commutation with the lift, and the worked fixture eigensystems.

use crate::arith::is_prime;
use crate::chars::{kronecker_symbol, DirichletCharacter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{solve_exact, Matrix};
use crate::qseries::{QExpansion, SeriesMeta, Weight};

/// Ambient data for the half-integral operators.
#[derive(Clone, Debug)]
pub struct HeckeContext {
    pub k: u32,
    pub level: u64,
    pub character: DirichletCharacter,
}

impl HeckeContext {
    pub fn new(k: u32, level: u64, character: DirichletCharacter) -> Result<HeckeContext> {
        if k.is_multiple_of(2) || k < 3 {
            return Err(Error::MetaMismatch(format!("weight numerator must be odd >= 3, got {k}")));
        }
        if !level.is_multiple_of(4) {
            return Err(Error::MetaMismatch(format!("4 must divide the level, got {level}")));
        }
        Ok(HeckeContext { k, level, character })
    }

    pub fn lambda(&self) -> u32 {
        (self.k - 1) / 2
    }

    pub fn meta(&self) -> Result<SeriesMeta> {
        SeriesMeta::new(Weight::Half(self.k), self.level, self.character.clone())
    }
}

/// T_{p^2} on a half-integral weight expansion.
///
/// Output precision is floor((prec - 1) / p^2) + 1 and must stay >= 2.
pub fn t_p2_half<F: Field>(
    f: &QExpansion<F>,
    p: u64,
    ctx: &HeckeContext,
) -> Result<QExpansion<F>> {
    assert!(is_prime(p), "p must be prime");
    match &f.meta.weight {
        Weight::Half(k) if *k == ctx.k => {}
        w => {
            return Err(Error::MetaMismatch(format!(
                "series weight {w:?} does not match context k = {}",
                ctx.k
            )))
        }
    }
    if f.meta.level != ctx.level || f.meta.character != ctx.character {
        return Err(Error::MetaMismatch(
            "series level or character does not match the Hecke context".into(),
        ));
    }
    let p2 = p * p;
    let out_prec = (f.precision - 1) / p2 + 1;
    if out_prec < 2 {
        return Err(Error::PrecisionTooLow { needed: p2 + 1, have: f.precision });
    }
    let field = &f.field;
    let lambda = ctx.lambda();
    let chi_p = ctx.character.value_in(p, field)?;
    let chi_p2_pk2 = {
        let sq = field.mul(&chi_p, &chi_p);
        field.mul(&sq, &field.pow_u(&field.from_i64(p as i64), (ctx.k - 2) as u64))
    };
    let p_lam1 = field.pow_u(&field.from_i64(p as i64), (lambda - 1) as u64);
    let sign: i64 = if lambda % 2 == 1 { -1 } else { 1 };

    let mut out = QExpansion::new(field.clone(), f.meta.clone(), out_prec);
    for n in 1..out_prec {
        let mut b = f.coeff(p2 * n)?;
        let an = f.coeff(n)?;
        if !field.is_zero(&an) && !field.is_zero(&chi_p) {
            let kro = kronecker_symbol(sign * n as i64, p as i64);
            if kro != 0 {
                let mut mid = field.mul(&chi_p, &an);
                mid = field.mul(&mid, &p_lam1);
                if kro < 0 {
                    mid = field.neg(&mid);
                }
                b = field.add(&b, &mid);
            }
        }
        if n % p2 == 0 {
            let low = f.coeff(n / p2)?;
            if !field.is_zero(&low) {
                b = field.add(&b, &field.mul(&chi_p2_pk2, &low));
            }
        }
        out.set(n, b);
    }
    Ok(out)
}

/// Classical T_p on an integral weight expansion:
/// b_n = a_{pn} + chi(p) p^{w-1} a_{n/p}.
pub fn t_p_integral<F: Field>(
    g: &QExpansion<F>,
    p: u64,
    weight: u32,
    character: &DirichletCharacter,
) -> Result<QExpansion<F>> {
    assert!(is_prime(p), "p must be prime");
    if g.precision <= p {
        return Err(Error::PrecisionTooLow { needed: p + 1, have: g.precision });
    }
    let out_prec = (g.precision - 1) / p + 1;
    let field = &g.field;
    let chi_p_pw = {
        let c = character.value_in(p, field)?;
        field.mul(&c, &field.pow_u(&field.from_i64(p as i64), (weight - 1) as u64))
    };
    let mut out = QExpansion::new(field.clone(), g.meta.clone(), out_prec);
    for n in 0..out_prec {
        let mut b = g.coeff(p * n)?;
        if n % p == 0 {
            // note n = 0 also picks up the a_0 term, the Eisenstein normalization
            let low = g.coeff(n / p)?;
            if !field.is_zero(&low) {
                b = field.add(&b, &field.mul(&chi_p_pw, &low));
            }
        }
        out.set(n, b);
    }
    Ok(out)
}

/// Matrix of T_{p^2} on a supplied basis, certified on all coefficients
/// n < certify_prec: the solution M satisfies T(basis_j) = sum_i M_ij basis_i
/// exactly on that range, or the call fails.
pub fn hecke_matrix<F: Field>(
    basis: &[QExpansion<F>],
    p: u64,
    ctx: &HeckeContext,
    certify_prec: u64,
) -> Result<Matrix<F>> {
    if basis.is_empty() {
        // a zero-dimensional space has the empty operator
        return Ok(Matrix::empty());
    }
    let field = basis[0].field.clone();
    let needed = p * p * (certify_prec - 1) + 1;
    for b in basis {
        if b.precision < needed {
            return Err(Error::PrecisionTooLow { needed, have: b.precision });
        }
    }
    let images: Vec<QExpansion<F>> = basis
        .iter()
        .map(|b| t_p2_half(b, p, ctx).map(|img| img.truncate(certify_prec)))
        .collect::<Result<_>>()?;

    // stacked system over coefficients 1 .. certify_prec
    let mut a_rows = Vec::with_capacity((certify_prec - 1) as usize);
    let mut rhs_rows = Vec::with_capacity((certify_prec - 1) as usize);
    for n in 1..certify_prec {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            row.push(b.coeff(n)?);
        }
        a_rows.push(row);
        let mut img_row = Vec::with_capacity(images.len());
        for im in &images {
            img_row.push(im.coeff(n)?);
        }
        rhs_rows.push(img_row);
    }
    let a = Matrix::from_rows(&field, a_rows);
    let rhs = Matrix::from_rows(&field, rhs_rows);
    solve_exact(&field, &a, &rhs)
}
