//! Dense exact linear algebra over any [`Field`]: reduced row echelon form,
//! kernels, and certified linear solves. Everything is deterministic; row
//! order of results depends only on the input span.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Matrix<F> {
        Matrix { rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Matrix<F> {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// The 0 x 0 matrix; needs no field context.
    pub fn empty() -> Matrix<F> {
        Matrix { rows: 0, cols: 0, entries: vec![] }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Matrix<F> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        let _ = field;
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F::Elem {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, field: &F, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = field.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = field.add(out.at(i, j), &t);
                }
            }
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| field.sub(a, b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Matrix<F> {
        let entries = self.entries.iter().map(|a| field.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Applies a coefficient map entrywise, producing a matrix over another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Stacks rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }
}

/// Reduced row echelon form of the given row vectors: pivots are 1 with zeros
/// above and below, zero rows dropped, rows ordered by pivot column. The
/// output depends only on the span, which makes downstream reports stable.
pub fn echelonize<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
    let mut ech: Vec<Vec<F::Elem>> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        reduce_against(field, &mut v, &ech);
        if let Some(p) = v.iter().position(|c| !field.is_zero(c)) {
            let inv = field.inv(&v[p]).expect("pivot is nonzero");
            for c in v.iter_mut() {
                *c = field.mul(c, &inv);
            }
            // clear column p in existing rows
            for e in ech.iter_mut() {
                if !field.is_zero(&e[p]) {
                    let f = e[p].clone();
                    for (ec, vc) in e.iter_mut().zip(v.iter()) {
                        *ec = field.sub(ec, &field.mul(&f, vc));
                    }
                }
            }
            ech.push(v);
        }
    }
    ech.sort_by_key(|r| r.iter().position(|c| !field.is_zero(c)).unwrap_or(cols));
    ech
}

fn reduce_against<F: Field>(field: &F, v: &mut [F::Elem], ech: &[Vec<F::Elem>]) {
    for e in ech {
        let p = e.iter().position(|c| !field.is_zero(c)).expect("echelon rows are nonzero");
        if !field.is_zero(&v[p]) {
            let f = field.div(&v[p], &e[p]).expect("pivot invertible");
            for (vc, ec) in v.iter_mut().zip(e.iter()) {
                *vc = field.sub(vc, &field.mul(&f, ec));
            }
        }
    }
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    echelonize(field, rows).len()
}

/// Basis of the right kernel {v : M v = 0} in reduced echelon form.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let ech = echelonize(field, &m.row_vecs());
    let pivots: Vec<usize> = ech
        .iter()
        .map(|r| r.iter().position(|c| !field.is_zero(c)).unwrap())
        .collect();
    let mut basis = Vec::new();
    for j in 0..m.cols {
        if pivots.contains(&j) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[j] = field.one();
        for (r, &p) in ech.iter().zip(&pivots) {
            // pivot entry is 1: v[p] = -r[j]
            v[p] = field.neg(&r[j]);
        }
        basis.push(v);
    }
    echelonize(field, &basis)
}

/// Solves M x = b for each column b of `rhs`, requiring a unique solution.
///
/// Returns the cols(M) x cols(rhs) solution matrix. `NotInSpan` when some
/// column is inconsistent, `PrecisionTooLow` when the column space of M does
/// not determine x uniquely (rank(M) < cols(M)).
pub fn solve_exact<F: Field>(field: &F, m: &Matrix<F>, rhs: &Matrix<F>) -> Result<Matrix<F>> {
    assert_eq!(m.rows, rhs.rows);
    // echelonize the augmented rows [M | rhs]
    let mut aug_rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = m.row(i).to_vec();
        row.extend(rhs.row(i).iter().cloned());
        aug_rows.push(row);
    }
    let ech = echelonize(field, &aug_rows);
    let mut sol = Matrix::zero(field, m.cols, rhs.cols);
    let mut seen = vec![false; m.cols];
    for r in &ech {
        let p = r.iter().position(|c| !field.is_zero(c)).unwrap();
        if p >= m.cols {
            return Err(Error::NotInSpan(
                "inconsistent linear system: image not in span of basis".into(),
            ));
        }
        seen[p] = true;
        for j in 0..rhs.cols {
            *sol.at_mut(p, j) = r[m.cols + j].clone();
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::PrecisionTooLow { needed: m.cols as u64, have: ech.len() as u64 });
    }
    // the echelon form is reduced, so pivot rows read off the unique solution
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::rat;
    use num_rational::BigRational as Rat;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|r| r.iter().map(|&c| rat(c)).collect()).collect()
    }

    #[test]
    fn echelon_scaling() {
        let e = echelonize(&Rationals, &rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(e, rows(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn echelon_empty() {
        let e = echelonize(&Rationals, &rows(&[]));
        assert!(e.is_empty());
    }

    #[test]
    fn echelon_two_step() {
        let e = echelonize(&Rationals, &rows(&[&[1, 1], &[1, -1]]));
        assert_eq!(e, rows(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn echelon_order_independent() {
        let a = echelonize(&Rationals, &rows(&[&[1, 2, 3], &[0, 1, 1], &[2, 5, 7]]));
        let b = echelonize(&Rationals, &rows(&[&[2, 5, 7], &[1, 2, 3], &[0, 1, 1]]));
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_zero_matrix() {
        let m = Matrix::<Rationals>::zero(&Rationals, 2, 2);
        let k = kernel(&Rationals, &m);
        assert_eq!(k, rows(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_identity() {
        let m = Matrix::identity(&Rationals, 3);
        assert!(kernel(&Rationals, &m).is_empty());
    }

    #[test]
    fn kernel_rank_one() {
        let m = Matrix::from_rows(&Rationals, rows(&[&[1, 1], &[2, 2]]));
        let k = kernel(&Rationals, &m);
        assert_eq!(k, rows(&[&[1, -1]]));
        // rank-nullity
        assert_eq!(k.len() + rank(&Rationals, &m.row_vecs()), m.cols);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_rows(&Rationals, rows(&[&[1, 2, 3], &[4, 5, 6]]));
        for v in kernel(&Rationals, &m) {
            for i in 0..m.rows {
                let mut acc = rat(0);
                for j in 0..m.cols {
                    acc += m.at(i, j) * &v[j];
                }
                assert_eq!(acc, rat(0));
            }
        }
    }

    #[test]
    fn solve_unique() {
        let m = Matrix::from_rows(&Rationals, rows(&[&[1, 0], &[1, 1], &[0, 2]]));
        let rhs = Matrix::from_rows(&Rationals, rows(&[&[3], &[5], &[4]]));
        let x = solve_exact(&Rationals, &m, &rhs).unwrap();
        assert_eq!(x.row_vecs(), rows(&[&[3], &[2]]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_rows(&Rationals, rows(&[&[1, 0], &[1, 0]]));
        let rhs = Matrix::from_rows(&Rationals, rows(&[&[1], &[2]]));
        assert!(matches!(solve_exact(&Rationals, &m, &rhs), Err(Error::NotInSpan(_))));
    }

    #[test]
    fn solve_detects_underdetermined() {
        let m = Matrix::from_rows(&Rationals, rows(&[&[1, 1]]));
        let rhs = Matrix::from_rows(&Rationals, rows(&[&[1]]));
        assert!(matches!(
            solve_exact(&Rationals, &m, &rhs),
            Err(Error::PrecisionTooLow { .. })
        ));
    }
}
