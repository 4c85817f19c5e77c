//! Hecke action on a rational span and exact eigensystem extraction: joint
//! kernels over a number field, normalized eigenvector read-offs, and the
//! U_2 trace that recovers the even part of an eigensystem.

use crate::dense::Dense;
use crate::mspace::Span;
use num_traits::Zero;
use shimdec_core::field::{Field, NfElement, NumberField, Rationals};
use shimdec_core::linalg::{self, Matrix};
use shimdec_core::poly;

/// Coefficientwise T_p on an integral-weight series over Gamma_0(level) with
/// trivial nebentypus: b_n = a_{pn} + chi(p) p^{w-1} a_{n/p}, chi(p) zero for
/// p dividing the level. Output has precision prec / p.
pub fn t_p_dense(s: &Dense, p: usize, weight: u32, level: u64) -> Dense {
    let out_prec = s.prec() / p;
    let mut out = Dense::zeros(out_prec);
    let good = !level.is_multiple_of(p as u64);
    let pw: i64 = (p as i64).pow(weight - 1);
    for n in 0..out_prec {
        let mut v = s.c[p * n].clone();
        if good && n % p == 0 {
            v += &s.c[n / p] * poly::rat(pw);
        }
        out.c[n] = v;
    }
    out
}

/// Matrix of T_p on the span: T(b_j) = sum_i M_ij b_i, solved and verified on
/// every coefficient index below prec / p.
pub fn t_p_matrix(span: &Span, p: usize, weight: u32, level: u64) -> Matrix<Rationals> {
    let images: Vec<Dense> = span
        .rows
        .iter()
        .map(|r| t_p_dense(r, p, weight, level))
        .collect();
    let rows_avail = images[0].prec();
    assert!(rows_avail > span.max_pivot(), "span precision too low for the T_{p} solve");
    let mut a_rows = Vec::with_capacity(rows_avail);
    let mut rhs_rows = Vec::with_capacity(rows_avail);
    for idx in 0..rows_avail {
        a_rows.push(span.rows.iter().map(|r| r.c[idx].clone()).collect::<Vec<_>>());
        rhs_rows.push(images.iter().map(|im| im.c[idx].clone()).collect::<Vec<_>>());
    }
    let a = Matrix::from_rows(&Rationals, a_rows);
    let rhs = Matrix::from_rows(&Rationals, rhs_rows);
    linalg::solve_exact(&Rationals, &a, &rhs).expect("Hecke image must lie in the span")
}

/// A joint eigenspace over a number field, with its series realized as dense
/// vectors of field elements.
pub struct EigenSpace {
    pub field: NumberField,
    /// Echelonized basis, each a dense coefficient vector over the field.
    pub basis: Vec<Vec<NfElement>>,
}

impl EigenSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The echelon basis vector with leading coefficient at index 1,
    /// normalized; the orbit read-off vector.
    pub fn normalized_newvector(&self) -> &Vec<NfElement> {
        let v = &self.basis[0];
        let f = &self.field;
        assert!(
            f.is_zero(&v[0]) && v[1] == f.one(),
            "eigenspace must lead with a normalized q coefficient"
        );
        v
    }
}

/// Joint kernel of (M_p - lambda_p I) over the given field, mapped back to
/// dense series over the field.
pub fn joint_eigenspace(
    span: &Span,
    field: &NumberField,
    conditions: &[(Matrix<Rationals>, NfElement)],
) -> EigenSpace {
    let n = span.dim();
    let mut stacked: Option<Matrix<NumberField>> = None;
    for (m, lam) in conditions {
        let m_f: Matrix<NumberField> = m.map(|e| field.from_rat(e));
        let shifted = m_f.sub(field, &Matrix::identity(field, n).scale(field, lam));
        stacked = Some(match stacked {
            None => shifted,
            Some(prev) => prev.vstack(&shifted),
        });
    }
    let kernel = linalg::kernel(field, &stacked.expect("at least one condition"));
    // realize coordinate vectors as series over the field
    let mut series: Vec<Vec<NfElement>> = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let mut s = vec![field.zero(); span.prec];
        for (c, row) in v.iter().zip(&span.rows) {
            if field.is_zero(c) {
                continue;
            }
            for (idx, x) in row.c.iter().enumerate() {
                if !x.is_zero() {
                    let t = field.mul(c, &field.from_rat(x));
                    s[idx] = field.add(&s[idx], &t);
                }
            }
        }
        series.push(s);
    }
    let basis = linalg::echelonize(field, &series);
    EigenSpace { field: field.clone(), basis }
}

/// U_p restricted to an eigenspace, for p dividing the span level: returns
/// the trace of the coefficient shift b_n = a_{pn}. On the span of the
/// dilations V_d phi, d | m, each d coprime to p contributes a_p to the
/// trace and the p-chains contribute zero, so the trace equals a_p times
/// #{d | m : p does not divide d}.
pub fn up_trace(space: &EigenSpace, p: usize) -> NfElement {
    let f = &space.field;
    let n = space.dim();
    let prec = space.basis[0].len();
    let out_prec = prec / p;
    // images under the coefficient shift b_n = a_{pn}
    let images: Vec<Vec<NfElement>> = space
        .basis
        .iter()
        .map(|v| (0..out_prec).map(|i| v[p * i].clone()).collect())
        .collect();
    // solve images in terms of the basis on the available range
    let mut a_rows = Vec::with_capacity(out_prec);
    let mut rhs_rows = Vec::with_capacity(out_prec);
    for idx in 0..out_prec {
        a_rows.push(space.basis.iter().map(|v| v[idx].clone()).collect::<Vec<_>>());
        rhs_rows.push(images.iter().map(|im| im[idx].clone()).collect::<Vec<_>>());
    }
    let a = Matrix::from_rows(f, a_rows);
    let rhs = Matrix::from_rows(f, rhs_rows);
    let m = linalg::solve_exact(f, &a, &rhs).expect("U_p preserves the V_d span");
    let mut tr = f.zero();
    for i in 0..n {
        tr = f.add(&tr, m.at(i, i));
    }
    tr
}

/// Eigenvalue table for an orbit. The eigenspace is the span of V_d phi
/// over d | dilation_range, its first echelon vector is phi plus dilation
/// copies, so a_p reads off the coefficient at p whenever p is coprime to
/// the dilation range; the remaining primes come from the U_p trace divided
/// by the number of dilation indices coprime to p.
pub fn orbit_ap_table(
    space: &EigenSpace,
    dilation_range: u64,
    prime_bound: u64,
) -> std::collections::BTreeMap<u64, NfElement> {
    let w = space.normalized_newvector();
    let f = &space.field;
    let mut out = std::collections::BTreeMap::new();
    for p in shimdec_core::arith::primes_up_to(prime_bound) {
        if dilation_range.is_multiple_of(p) {
            let copies = shimdec_core::arith::divisors(dilation_range)
                .into_iter()
                .filter(|d| d % p != 0)
                .count() as i64;
            let tr = up_trace(space, p as usize);
            let ap = f.div(&tr, &f.from_i64(copies)).expect("coprime copy count is nonzero");
            out.insert(p, ap);
        } else {
            assert!((p as usize) < w.len(), "precision too low for a_{p}");
            out.insert(p, w[p as usize].clone());
        }
    }
    out
}

/// Scans integer candidates for T_p eigenvalues on the span (Weil-bounded)
/// and returns (lambda, kernel dimension) pairs with nonzero kernels.
pub fn rational_eigenvalue_scan(
    span: &Span,
    m: &Matrix<Rationals>,
    weight: u32,
    p: u64,
) -> Vec<(i64, usize)> {
    // |a_p| <= 2 p^{(w-1)/2}; integer bound via integer sqrt
    let bound2 = 4 * p.pow(weight - 1);
    let mut b = 0u64;
    while (b + 1) * (b + 1) <= bound2 {
        b += 1;
    }
    let q = NumberField::rationals();
    let mut out = Vec::new();
    for lam in -(b as i64)..=b as i64 {
        let cond = vec![(m.clone(), q.from_i64(lam))];
        let space = joint_eigenspace(span, &q, &cond);
        if space.dim() > 0 {
            out.push((lam, space.dim()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaq::eta_product;
    use crate::mspace::m2_gamma0_4p;
    use num_bigint::BigInt;

    #[test]
    fn level44_eigensplit_matches_oracles() {
        // the 11a orbit inside M_2(44): lambda_3 = -1, lambda_5 = 1 from the
        // eta product; the kernel must be the three V_d copies
        let span = m2_gamma0_4p(11, 200);
        let t3 = t_p_matrix(&span, 3, 2, 44);
        let t5 = t_p_matrix(&span, 5, 2, 44);
        let q = NumberField::rationals();
        let conds = vec![(t3.clone(), q.from_i64(-1)), (t5.clone(), q.from_i64(1))];
        let e11 = joint_eigenspace(&span, &q, &conds);
        assert_eq!(e11.dim(), 3);
        let table = orbit_ap_table(&e11, 4, 100);
        // all odd-prime read-offs match the eta product, and a_2 = -2
        let eta = eta_product(&[(1, 2), (11, 2)], 200);
        for (&p, v) in &table {
            if p == 2 {
                assert_eq!(*v, q.from_i64(-2), "a_2 via U_2 trace");
            } else {
                assert_eq!(v.as_rational().unwrap(), eta.c[p as usize], "a_{p}");
            }
        }
        // the point-counting oracle agrees across the whole table
        let curve = crate::curves::Curve { a1: 0, a2: -1, a3: 1, a4: -10, a6: -20 };
        for (&p, v) in &table {
            assert_eq!(v.as_rational().unwrap(), poly::rat(curve.ap(p)), "curve a_{p}");
        }

        // Eisenstein eigenvalue 1 + 3 = 4 has the five-dimensional kernel
        let e_eis = joint_eigenspace(&span, &q, &[(t3.clone(), q.from_i64(4))]);
        assert_eq!(e_eis.dim(), 5);

        // the remaining newform at level 44: scan integer eigenvalues of T_3
        let hits = rational_eigenvalue_scan(&span, &t3, 2, 3);
        let other: Vec<_> = hits.iter().filter(|&&(l, _)| l != -1 && l != 4).collect();
        assert_eq!(other.len(), 1);
        let (lam44, dim44) = *other[0];
        assert_eq!(dim44, 1);
        let e44 = joint_eigenspace(&span, &q, &[(t3, q.from_i64(lam44))]);
        let table44 = orbit_ap_table(&e44, 1, 60);
        // cross-validate against an independently located curve of conductor 44
        let c44 = crate::curves::find_curve(
            &(1..=12)
                .map(|n| an_from_table(&q, &table44, n, 44))
                .collect::<Vec<_>>(),
            &[2, 11],
            12,
        )
        .expect("conductor-44 curve in the box");
        for (&p, v) in &table44 {
            assert_eq!(v.as_rational().unwrap(), poly::rat(c44.ap(p)), "44-new a_{p}");
        }
    }

    fn an_from_table(
        _q: &NumberField,
        table: &std::collections::BTreeMap<u64, NfElement>,
        n: u64,
        level: u64,
    ) -> i64 {
        use shimdec_core::arith::factor;
        let mut acc = poly::rat(1);
        for (p, e) in factor(n) {
            let ap = table[&p].as_rational().unwrap();
            let mut vals = vec![poly::rat(1), ap.clone()];
            for j in 2..=e {
                let good = level % p != 0;
                let mut next = &vals[(j - 1) as usize] * &ap;
                if good {
                    next -= &vals[(j - 2) as usize] * poly::rat(p as i64);
                }
                vals.push(next);
            }
            acc *= &vals[e as usize];
        }
        // exact integer by construction
        let r = acc;
        assert!(r.is_integer());
        i64::try_from(r.to_integer()).unwrap()
    }

    #[test]
    fn u2_trace_handles_quadratic_orbit() {
        // build the golden-ratio field and check the trace machinery on a
        // synthetic 1-dimensional eigenspace
        let k = NumberField::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]).unwrap();
        let mut v = vec![k.zero(); 20];
        // series q + b q^2 + q^3 + b q^4 ... : U_2 image has a_n = v_{2n}
        v[1] = k.one();
        v[2] = k.gen();
        v[4] = k.gen();
        v[8] = k.mul(&k.gen(), &k.gen());
        // U_2(v) = b + b q^2 + b^2 q^4: not proportional to v, so the solve
        // must fail; this guards the expectation inside u2_trace
        let space = EigenSpace { field: k, basis: vec![v] };
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| up_trace(&space, 2)));
        assert!(result.is_err());
    }
}
