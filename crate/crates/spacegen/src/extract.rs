//! Extraction of half-integral weight eigenspace candidates from a quotient
//! space W = S_k'(Gamma_0(N)) / theta^j, and their certification.
//!
//! Every genuine form f of half-integral weight k/2 on Gamma_0(N) with the
//! ambient character has f * theta^j of integral weight, so f lies in W.
//! Imposing the coefficientwise T_{p^2} eigen-equations for the
//! distinguishing primes cuts a candidate space that contains the true
//! summand; equality of the candidate dimension with the established summand
//! dimension certifies the candidate exactly.

use crate::dense::Dense;
use crate::mspace::Span;
use num_traits::Zero;
use shimdec_core::chars::{kronecker_symbol, DirichletCharacter};
use shimdec_core::field::{Field, NfElement, NumberField};
use shimdec_core::linalg;
use shimdec_core::poly;
use shimdec_core::qseries::{QExpansion, SeriesMeta, Weight};

/// The parameters of the half-integral target space.
pub struct HalfSpec {
    pub level: u64,
    pub k: u32,
    pub chi: DirichletCharacter,
}

impl HalfSpec {
    pub fn lambda(&self) -> u32 {
        (self.k - 1) / 2
    }

    pub fn meta(&self) -> SeriesMeta {
        SeriesMeta::new(Weight::Half(self.k), self.level, self.chi.clone()).expect("valid meta")
    }
}

/// Divides every span row by theta^power, producing the quotient candidates.
pub fn w_space(span: &Span, theta_power: u32) -> Vec<Dense> {
    let t = crate::etaq::theta_pow(theta_power, span.prec);
    span.rows.iter().map(|r| r.div(&t)).collect()
}

/// Joint eigen-condition kernel over the packet field: all w in span(W) with
/// T_{p^2} w = lambda_p w as coefficient identities for n < (prec-1)/p^2,
/// for every listed prime. Returns echelonized dense series over the field.
pub fn candidate_summand(
    w: &[Dense],
    spec: &HalfSpec,
    field: &NumberField,
    lambdas: &[(u64, NfElement)],
    expected_dim: usize,
    label: &str,
) -> Vec<Vec<NfElement>> {
    assert!(!w.is_empty());
    let prec = w[0].prec();
    let lambda = spec.lambda();
    let sign: i64 = if lambda % 2 == 1 { -1 } else { 1 };
    let mut rows: Vec<Vec<NfElement>> = Vec::new();
    for (p, lam) in lambdas {
        let p = *p as usize;
        let p2 = p * p;
        let chi_p = spec.chi.rational_value(p as u64);
        let chi_p2_pk2 = &chi_p * &chi_p * poly::rat((p as i64).pow(spec.k - 2));
        let p_lam1 = poly::rat((p as i64).pow(lambda - 1));
        for n in 1..(prec - 1) / p2 + 1 {
            let mut row = Vec::with_capacity(w.len());
            for col in w {
                // rational part: a_{p^2 n} + chi(p) ((-1)^lambda n | p) p^{lambda-1} a_n
                //                + chi(p)^2 p^{k-2} a_{n/p^2}
                let mut r = col.c[p2 * n].clone();
                if !chi_p.is_zero() {
                    let kro = kronecker_symbol(sign * n as i64, p as i64);
                    if kro != 0 {
                        let term = &chi_p * &p_lam1 * &col.c[n] * poly::rat(kro);
                        r += term;
                    }
                    if n % p2 == 0 {
                        r += &chi_p2_pk2 * &col.c[n / p2];
                    }
                }
                // subtract lambda a_n over the field
                let base = field.from_rat(&r);
                let shift = field.mul(lam, &field.from_rat(&col.c[n]));
                row.push(field.sub(&base, &shift));
            }
            rows.push(row);
        }
    }
    let m = linalg::Matrix::from_rows(field, rows);
    let kernel = linalg::kernel(field, &m);
    // realize as series over the field
    let mut series: Vec<Vec<NfElement>> = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let mut s = vec![field.zero(); prec];
        for (c, col) in v.iter().zip(w) {
            if field.is_zero(c) {
                continue;
            }
            for (idx, x) in col.c.iter().enumerate() {
                if !x.is_zero() {
                    let t = field.mul(c, &field.from_rat(x));
                    s[idx] = field.add(&s[idx], &t);
                }
            }
        }
        series.push(s);
    }
    let basis = linalg::echelonize(field, &series);
    assert_eq!(
        basis.len(),
        expected_dim,
        "candidate dimension for {label} must match the established summand dimension"
    );
    // a genuine half-integral form has no constant term
    for s in &basis {
        assert!(field.is_zero(&s[0]), "summand candidate for {label} must vanish at q^0");
    }
    basis
}

/// Rational rows spanned by a candidate over a quadratic field together with
/// its Galois conjugate: the coordinate series of each basis vector.
pub fn rational_rows_of_orbit(field: &NumberField, basis: &[Vec<NfElement>]) -> Vec<Dense> {
    assert_eq!(field.degree(), 2);
    let mut out = Vec::new();
    for v in basis {
        let prec = v.len();
        let mut a = Dense::zeros(prec);
        let mut b = Dense::zeros(prec);
        for (n, e) in v.iter().enumerate() {
            a.c[n] = e.coords[0].clone();
            b.c[n] = e.coords[1].clone();
        }
        out.push(a);
        out.push(b);
    }
    out
}

/// Rational rows of a candidate already over Q.
pub fn rational_rows_plain(field: &NumberField, basis: &[Vec<NfElement>]) -> Vec<Dense> {
    assert_eq!(field.degree(), 1);
    basis
        .iter()
        .map(|v| {
            let mut d = Dense::zeros(v.len());
            for (n, e) in v.iter().enumerate() {
                d.c[n] = e.coords[0].clone();
            }
            d
        })
        .collect()
}

/// Converts a rational dense series (no constant term) into a core series
/// over the rationals presented as a degree-1 number field.
pub fn dense_to_series(
    d: &Dense,
    field: &NumberField,
    meta: &SeriesMeta,
    prec: u64,
) -> QExpansion<NumberField> {
    assert!(field.degree() == 1);
    let mut s = QExpansion::new(field.clone(), meta.clone(), prec);
    for n in 1..prec.min(d.prec() as u64) {
        let v = &d.c[n as usize];
        if !v.is_zero() {
            s.set(n, field.from_rat(v));
        }
    }
    s
}

/// Echelonized rational ambient basis from candidate row collections.
pub fn assemble_ambient(rows: Vec<Dense>, prec: usize, expected_dim: usize) -> Vec<Dense> {
    let mut span = Span::new(prec);
    for r in rows {
        span.insert(r);
    }
    assert_eq!(span.dim(), expected_dim, "ambient union must have the expected rank");
    // drop the constant column: spans of cusp-type quotients never carry one
    for r in &span.rows {
        assert!(r.c[0].is_zero(), "ambient basis must have no constant term");
    }
    span.rows.clone()
}

/// Builds the expected truncation comparison: candidate basis restricted to
/// the printed precision must match the transcribed table exactly.
pub fn assert_matches_table(
    field: &NumberField,
    basis: &[Vec<NfElement>],
    table: &[Vec<(u64, NfElement)>],
    printed_prec: u64,
    label: &str,
) {
    assert_eq!(basis.len(), table.len(), "{label}: dimension vs printed table");
    for (vec, printed) in basis.iter().zip(table) {
        let mut expect = vec![field.zero(); printed_prec as usize];
        for (n, v) in printed {
            expect[*n as usize] = v.clone();
        }
        for n in 1..printed_prec as usize {
            assert_eq!(vec[n], expect[n], "{label}: printed coefficient at q^{n}");
        }
    }
}
