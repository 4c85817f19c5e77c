//! Assembly of weight-2 and weight-4 spaces on Gamma_0(N) as rational spans
//! with exact rank certificates against the classical dimension formulas.

use crate::dense::{CycRing, CycSeries, Dense};
use crate::dims;
use crate::eisenstein::{dihedral_31, e1_scaled, e1_scaled_real, e2_diff, e2_pair_real};
use crate::etaq::{binary_theta, eta_product};
use num_rational::BigRational as Rat;
use num_traits::Zero;
use shimdec_core::arith::divisors;
use shimdec_core::chars::{all_characters, DirichletCharacter};

/// An echelonized rational span of q-series, coefficients 0..prec.
pub struct Span {
    pub prec: usize,
    /// Reduced echelon rows, pivots normalized to 1, sorted by pivot index.
    pub rows: Vec<Dense>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(prec: usize) -> Span {
        Span { prec, rows: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn max_pivot(&self) -> usize {
        self.pivots.iter().copied().max().unwrap_or(0)
    }

    /// Reduces a candidate against the span; inserts when independent.
    pub fn insert(&mut self, cand: Dense) -> bool {
        let mut v = cand;
        assert!(v.prec() >= self.prec, "candidate too short for the span");
        v.c.truncate(self.prec);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v.c[p].is_zero() {
                let f = v.c[p].clone();
                for (x, y) in v.c.iter_mut().zip(&row.c) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.c.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v.c[p].recip();
        for x in v.c.iter_mut() {
            *x *= &inv;
        }
        // clear the new pivot column in existing rows
        for row in self.rows.iter_mut() {
            if !row.c[p].is_zero() {
                let f = row.c[p].clone();
                for (x, y) in row.c.iter_mut().zip(&v.c) {
                    *x -= &f * y;
                }
            }
        }
        // keep rows ordered by pivot
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Expresses a series in the span; None when it falls outside.
    pub fn coordinates(&self, s: &Dense) -> Option<Vec<Rat>> {
        let mut v = s.clone();
        v.c.truncate(self.prec);
        let mut coords = vec![Rat::zero(); self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if !v.c[p].is_zero() {
                let f = v.c[p].clone();
                for (x, y) in v.c.iter_mut().zip(&row.c) {
                    *x -= &f * y;
                }
                coords[i] = f;
            }
        }
        if v.c.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// M_2(Gamma_0(36)) = the weight-2 cusp form of level 36 plus the classical
/// Eisenstein family; rank-certified against the dimension formula.
pub fn m2_gamma0_36(prec: usize) -> Span {
    let mut span = Span::new(prec);
    span.insert(eta_product(&[(6, 4)], prec));
    for d in [2u64, 3, 4, 6, 9, 12, 18, 36] {
        span.insert(e2_diff(d, prec));
    }
    let chi3 = DirichletCharacter::kronecker(-3, 3).unwrap();
    let pair = e2_pair_real(&chi3, prec);
    for d in [1usize, 2, 4] {
        span.insert(pair.dilate(d));
    }
    assert_eq!(span.dim() as u64, dims::dim_full(36, 2), "M_2(36) span certificate");
    span
}

/// S_4(Gamma_0(36)) = eta(6z)^4 * M_2(Gamma_0(36)); the product of the
/// nonzero cusp form with the full weight-2 space is injective and lands in
/// the cusp space, and the dimensions agree, so this is all of S_4(36).
pub fn s4_gamma0_36(prec: usize) -> Span {
    let m2 = m2_gamma0_36(prec);
    let eta4 = eta_product(&[(6, 4)], prec);
    let mut span = Span::new(prec);
    for row in &m2.rows {
        span.insert(eta4.mul(row));
    }
    assert_eq!(span.dim() as u64, dims::dim_cusp(36, 4), "S_4(36) span certificate");
    span
}

/// Weight-1 Eisenstein and dihedral products spanning M_2(Gamma_0(4 p)) for
/// p in {11, 31}: products E_1(1, psi)(az) E_1(1, psibar)(bz) over the odd
/// characters mod p, the level-p dihedral cusp form when present, binary
/// theta series of discriminant -4p, and the E_2 differences.
pub fn m2_gamma0_4p(p: u64, prec: usize) -> Span {
    let n = 4 * p;
    let target = dims::dim_full(n, 2);
    let mut span = Span::new(prec);
    // Eisenstein differences
    for d in divisors(n) {
        if d > 1 {
            span.insert(e2_diff(d, prec));
        }
    }
    // real quadratic character products (rational arithmetic)
    let chi_p = DirichletCharacter::kronecker(-(p as i64), p).unwrap();
    let e1_real = e1_scaled_real(&chi_p, prec);
    let mut real_factors: Vec<Dense> = vec![e1_real];
    if p == 31 {
        real_factors.push(dihedral_31(prec));
    }
    let layouts: Vec<(usize, usize)> =
        vec![(1, 1), (1, 2), (2, 1), (1, 4), (4, 1), (2, 2), (2, 4), (4, 2), (4, 4)];
    for f in &real_factors {
        for g in &real_factors {
            for &(a, b) in &layouts {
                if span.dim() as u64 == target {
                    break;
                }
                span.insert(f.dilate(a).mul(&g.dilate(b)));
            }
        }
    }
    // binary theta products of discriminant -4p
    let disc_forms: Vec<(i64, i64, i64)> = match p {
        31 => vec![(1, 0, 31), (5, 4, 7)],
        11 => vec![(1, 0, 11), (3, 2, 4)],
        _ => vec![],
    };
    let thetas: Vec<Dense> = disc_forms.iter().map(|&(a, b, c)| binary_theta(a, b, c, prec)).collect();
    for f in &thetas {
        for g in &thetas {
            if span.dim() as u64 == target {
                break;
            }
            span.insert(f.mul(g));
        }
    }
    // complex character pair products in Z[zeta_{p-1}]
    if (span.dim() as u64) < target {
        let order = p - 1;
        let ring = CycRing::new(order);
        let odd_chars: Vec<DirichletCharacter> = all_characters(p)
            .into_iter()
            .filter(|c| c.is_odd() && c.order() > 2)
            .collect();
        let mut seen: Vec<u64> = Vec::new();
        let mut cyc_cache: Vec<(DirichletCharacter, CycSeries)> = Vec::new();
        let series_for = |psi: &DirichletCharacter, cache: &mut Vec<(DirichletCharacter, CycSeries)>| -> CycSeries {
            if let Some((_, s)) = cache.iter().find(|(c, _)| c == psi) {
                return s.clone();
            }
            let s = e1_scaled(psi, &ring, prec);
            cache.push((psi.clone(), s.clone()));
            s
        };
        'pairs: for (i, psi) in odd_chars.iter().enumerate() {
            if seen.contains(&(i as u64)) {
                continue;
            }
            let conj = psi.pow(psi.order() - 1);
            let j = odd_chars.iter().position(|c| *c == conj).expect("conjugate is odd");
            seen.push(i as u64);
            seen.push(j as u64);
            let s1 = series_for(psi, &mut cyc_cache);
            let s2 = series_for(&conj, &mut cyc_cache);
            for &(a, b) in &layouts {
                if span.dim() as u64 == target {
                    break 'pairs;
                }
                let prod = s1.dilate(&ring, a).mul(&ring, &s2.dilate(&ring, b));
                for part in prod.split(&ring) {
                    if !part.is_zero() {
                        span.insert(part);
                    }
                }
            }
        }
    }
    assert_eq!(
        span.dim() as u64,
        target,
        "M_2({n}) span certificate: generators must reach the full dimension"
    );
    span
}
