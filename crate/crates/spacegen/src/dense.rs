//! Dense exact power series used during fixture generation: rational
//! coefficient vectors and cyclotomic-integer coefficient vectors with fast
//! i64 coordinate arithmetic.

use num_rational::BigRational as Rat;
use num_traits::Zero;
use shimdec_core::poly;

/// Dense rational series: c[n] is the coefficient of q^n, length = precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub c: Vec<Rat>,
}

impl Dense {
    pub fn zeros(prec: usize) -> Dense {
        Dense { c: vec![Rat::zero(); prec] }
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn from_ints(prec: usize, entries: &[(usize, i64)]) -> Dense {
        let mut d = Dense::zeros(prec);
        for &(n, v) in entries {
            d.c[n] = poly::rat(v);
        }
        d
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        let prec = self.prec().min(other.prec());
        let mut out = Dense::zeros(prec);
        for n in 0..prec {
            out.c[n] = &self.c[n] - &other.c[n];
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Dense {
        Dense { c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let prec = self.prec().min(other.prec());
        let mut out = Dense::zeros(prec);
        for i in 0..prec {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..prec - i {
                if !other.c[j].is_zero() {
                    let t = &self.c[i] * &other.c[j];
                    out.c[i + j] += t;
                }
            }
        }
        out
    }

    /// Exact division by a series with invertible constant term.
    pub fn div(&self, other: &Dense) -> Dense {
        let prec = self.prec().min(other.prec());
        assert!(!other.c[0].is_zero(), "divisor must be a unit");
        let inv0 = other.c[0].recip();
        let mut out = Dense::zeros(prec);
        for n in 0..prec {
            let mut acc = self.c[n].clone();
            for j in 1..=n {
                if !other.c[j].is_zero() && !out.c[n - j].is_zero() {
                    acc -= &other.c[j] * &out.c[n - j];
                }
            }
            out.c[n] = acc * &inv0;
        }
        out
    }

    /// Index dilation q -> q^t.
    pub fn dilate(&self, t: usize) -> Dense {
        self.dilate_to(t, self.prec())
    }

    /// Index dilation with explicit output precision.
    pub fn dilate_to(&self, t: usize, prec: usize) -> Dense {
        let mut out = Dense::zeros(prec);
        for (n, v) in self.c.iter().enumerate() {
            if n * t < out.c.len() {
                out.c[n * t] = v.clone();
            } else {
                break;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

/// Z[zeta_m] with i64 coordinates in the power basis of Phi_m, sized for the
/// fast series products in the span generators.
#[derive(Clone, Debug)]
pub struct CycRing {
    pub order: u64,
    pub deg: usize,
    /// reduction rows: x^{deg + i} expressed in the power basis, i < deg.
    red: Vec<Vec<i64>>,
}

impl CycRing {
    pub fn new(order: u64) -> CycRing {
        let phi = poly::cyclotomic(order);
        let deg = phi.len() - 1;
        let phi_i: Vec<i64> = phi
            .iter()
            .map(|c| {
                let n = c.to_integer();
                i64::try_from(n).expect("cyclotomic coefficients fit i64")
            })
            .collect();
        // x^deg = -(c_0 + ... + c_{deg-1} x^{deg-1}); build higher powers
        let mut red: Vec<Vec<i64>> = Vec::with_capacity(deg);
        let mut cur: Vec<i64> = phi_i[..deg].iter().map(|c| -c).collect();
        red.push(cur.clone());
        for _ in 1..deg {
            // multiply cur by x and reduce using red[0]
            let mut next = vec![0i64; deg];
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1];
            }
            next[0] = 0;
            if top != 0 {
                for i in 0..deg {
                    next[i] += top * red[0][i];
                }
            }
            red.push(next.clone());
            cur = next;
        }
        CycRing { order, deg, red }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.deg]
    }

    /// zeta^e in coordinates.
    pub fn zeta_pow(&self, e: u64) -> Vec<i64> {
        let e = (e % self.order) as usize;
        if e < self.deg {
            let mut v = self.zero();
            v[e] = 1;
            return v;
        }
        // repeated multiplication by zeta starting from x^{deg-1}
        let mut v = self.zero();
        v[self.deg - 1] = 1;
        for _ in 0..(e - (self.deg - 1)) {
            v = self.mul_by_x(&v);
        }
        v
    }

    fn mul_by_x(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.deg];
        let top = v[self.deg - 1];
        for i in (1..self.deg).rev() {
            out[i] = v[i - 1];
        }
        if top != 0 {
            for i in 0..self.deg {
                out[i] += top * self.red[0][i];
            }
        }
        out
    }

    pub fn add_assign(&self, a: &mut [i64], b: &[i64]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let d = self.deg;
        let mut wide = vec![0i128; 2 * d - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as i128;
            for j in 0..d {
                if b[j] != 0 {
                    wide[i + j] += ai * b[j] as i128;
                }
            }
        }
        let mut out: Vec<i128> = wide[..d].to_vec();
        for (i, &w) in wide[d..].iter().enumerate() {
            if w != 0 {
                for k in 0..d {
                    out[k] += w * self.red[i][k] as i128;
                }
            }
        }
        out.into_iter()
            .map(|x| i64::try_from(x).expect("cyclotomic product coordinates fit i64"))
            .collect()
    }
}

/// Dense series with Z[zeta_m] coordinates.
#[derive(Clone, Debug)]
pub struct CycSeries {
    pub c: Vec<Vec<i64>>,
}

impl CycSeries {
    pub fn zeros(ring: &CycRing, prec: usize) -> CycSeries {
        CycSeries { c: vec![ring.zero(); prec] }
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn mul(&self, ring: &CycRing, other: &CycSeries) -> CycSeries {
        let prec = self.prec().min(other.prec());
        let mut out = CycSeries::zeros(ring, prec);
        for i in 0..prec {
            if self.c[i].iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..prec - i {
                if other.c[j].iter().any(|&x| x != 0) {
                    let t = ring.mul(&self.c[i], &other.c[j]);
                    ring.add_assign(&mut out.c[i + j], &t);
                }
            }
        }
        out
    }

    pub fn dilate(&self, ring: &CycRing, t: usize) -> CycSeries {
        let mut out = CycSeries::zeros(ring, self.prec());
        for (n, v) in self.c.iter().enumerate() {
            if n * t < out.c.len() {
                out.c[n * t] = v.clone();
            } else {
                break;
            }
        }
        out
    }

    /// Splits into one rational dense series per power-basis coordinate.
    pub fn split(&self, ring: &CycRing) -> Vec<Dense> {
        let mut out = Vec::with_capacity(ring.deg);
        for k in 0..ring.deg {
            let mut d = Dense::zeros(self.prec());
            for (n, v) in self.c.iter().enumerate() {
                if v[k] != 0 {
                    d.c[n] = poly::rat(v[k]);
                }
            }
            out.push(d);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_mul_div_roundtrip() {
        let a = Dense::from_ints(20, &[(0, 1), (1, 2), (3, -1)]);
        let b = Dense::from_ints(20, &[(0, 1), (2, 5)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b), a);
    }

    #[test]
    fn cyc_ring_zeta_relations() {
        // zeta_4^2 = -1
        let r = CycRing::new(4);
        assert_eq!(r.deg, 2);
        let z = r.zeta_pow(1);
        let z2 = r.mul(&z, &z);
        assert_eq!(z2, vec![-1, 0]);
        // zeta_30 has degree 8 and zeta^30 = 1
        let r30 = CycRing::new(30);
        assert_eq!(r30.deg, 8);
        let z = r30.zeta_pow(1);
        let mut acc = r30.zeta_pow(0);
        for _ in 0..30 {
            acc = r30.mul(&acc, &z);
        }
        assert_eq!(acc, r30.zeta_pow(0));
        // zeta^15 = -1
        assert_eq!(r30.zeta_pow(15), {
            let mut v = r30.zero();
            v[0] = -1;
            v
        });
    }

    #[test]
    fn cyc_series_split_consistency() {
        let r = CycRing::new(10);
        let mut a = CycSeries::zeros(&r, 10);
        a.c[1] = r.zeta_pow(3);
        a.c[2] = r.zeta_pow(7);
        let sq = a.mul(&r, &a);
        // coefficient at q^3 is 2 zeta^{10} = 2
        assert_eq!(sq.c[3], {
            let mut v = r.zero();
            v[0] = 2;
            v
        });
        let parts = a.split(&r);
        assert_eq!(parts.len(), 4);
    }
}
