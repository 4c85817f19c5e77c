//! Eta products, the classical theta function, and binary-form theta series
//! as dense rational series.

use crate::dense::Dense;
use num_traits::One;
use shimdec_core::poly::rat;

/// prod_{n >= 1} (1 - x^n) by the pentagonal number theorem.
fn euler_function(prec: usize) -> Dense {
    let mut out = Dense::zeros(prec);
    out.c[0] = num_rational::BigRational::one();
    let mut k: i64 = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 as usize >= prec && g2 as usize >= prec {
            break;
        }
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        if (g1 as usize) < prec {
            out.c[g1 as usize] = sign.clone();
        }
        if (g2 as usize) < prec {
            out.c[g2 as usize] = sign;
        }
        k += 1;
    }
    out
}

/// prod_{n >= 1} (1 - q^{dn})^r for r > 0: the product part of eta(dz)^r.
fn eta_factor(d: usize, r: u32, prec: usize) -> Dense {
    let base = euler_function(prec / d + 1).dilate_to(d, prec);
    let mut acc = Dense::zeros(prec);
    acc.c[0] = rat(1);
    let mut pow = base;
    let mut e = r;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&pow);
        }
        pow = pow.mul(&pow);
        e >>= 1;
    }
    acc
}

/// Eta product prod_d eta(d z)^{r_d}; requires sum d r_d divisible by 24 and
/// returns the series including the leading q-power.
pub fn eta_product(factors: &[(usize, u32)], prec: usize) -> Dense {
    let weight24: usize = factors.iter().map(|&(d, r)| d * r as usize).sum();
    assert!(weight24.is_multiple_of(24), "eta product q-power must be integral");
    let shift = weight24 / 24;
    let mut acc = Dense::zeros(prec);
    acc.c[0] = rat(1);
    for &(d, r) in factors {
        acc = acc.mul(&eta_factor(d, r, prec));
    }
    // multiply by q^shift
    let mut out = Dense::zeros(prec);
    for n in 0..prec.saturating_sub(shift) {
        out.c[n + shift] = acc.c[n].clone();
    }
    out
}

/// theta(z) = 1 + 2 sum q^{m^2}.
pub fn theta(prec: usize) -> Dense {
    let mut out = Dense::zeros(prec);
    out.c[0] = rat(1);
    let mut m = 1usize;
    while m * m < prec {
        out.c[m * m] = rat(2);
        m += 1;
    }
    out
}

/// theta(z)^e.
pub fn theta_pow(e: u32, prec: usize) -> Dense {
    let t = theta(prec);
    let mut acc = Dense::zeros(prec);
    acc.c[0] = rat(1);
    for _ in 0..e {
        acc = acc.mul(&t);
    }
    acc
}

/// Theta series of the positive binary quadratic form a x^2 + b xy + c y^2,
/// summed over all integer pairs including the origin.
pub fn binary_theta(a: i64, b: i64, c: i64, prec: usize) -> Dense {
    assert!(a > 0 && 4 * a * c - b * b > 0, "form must be positive definite");
    let mut out = Dense::zeros(prec);
    out.c[0] = rat(1);
    // bound |x|, |y| from the positive definite quadratic: a x^2 + b xy + c y^2
    // >= (min eigenvalue-ish) -- use the crude bound via the discriminant
    let disc = 4 * a * c - b * b;
    let xmax = (((4 * c * prec as i64) / disc) as f64).sqrt() as i64 + 2;
    let ymax = (((4 * a * prec as i64) / disc) as f64).sqrt() as i64 + 2;
    for x in -xmax..=xmax {
        for y in -ymax..=ymax {
            if x == 0 && y == 0 {
                continue;
            }
            let v = a * x * x + b * x * y + c * y * y;
            if v > 0 && (v as usize) < prec {
                out.c[v as usize] += rat(1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta6_4_is_the_level36_form() {
        // eta(6z)^4 = q - 4q^7 + 2q^13 + 8q^19 - 5q^25 - 4q^31 ...
        let f = eta_product(&[(6, 4)], 40);
        let expect = [(1usize, 1i64), (7, -4), (13, 2), (19, 8), (25, -5), (31, -4), (37, -10)];
        for (n, v) in expect {
            assert_eq!(f.c[n], rat(v), "n = {n}");
        }
        for n in [2usize, 3, 4, 5, 6, 8, 9, 10, 11, 12] {
            assert_eq!(f.c[n], rat(0), "n = {n}");
        }
    }

    #[test]
    fn eta_level6_weight4() {
        // eta(z)^2 eta(2z)^2 eta(3z)^2 eta(6z)^2 = q - 2q^2 - 3q^3 + 4q^4 + 6q^5 + 6q^6 - 16q^7 ...
        let f = eta_product(&[(1, 2), (2, 2), (3, 2), (6, 2)], 12);
        let expect = [
            (1usize, 1i64), (2, -2), (3, -3), (4, 4), (5, 6), (6, 6), (7, -16), (8, -8), (9, 9), (10, -12), (11, 12),
        ];
        for (n, v) in expect {
            assert_eq!(f.c[n], rat(v), "n = {n}");
        }
    }

    #[test]
    fn eta_level9_weight4() {
        // eta(3z)^8 = q - 8q^4 + 20q^7 - 70q^13 + 64q^16 ... with support on
        // n = 1 mod 3 and a_10 = a_2 a_5 = 0
        let f = eta_product(&[(3, 8)], 18);
        assert_eq!(f.c[1], rat(1));
        assert_eq!(f.c[4], rat(-8));
        assert_eq!(f.c[7], rat(20));
        assert_eq!(f.c[10], rat(0));
        assert_eq!(f.c[13], rat(-70));
        assert_eq!(f.c[16], rat(64));
        assert_eq!(f.c[2], rat(0));
    }

    #[test]
    fn eta_level11_weight2() {
        // eta(z)^2 eta(11z)^2 = q - 2q^2 - q^3 + 2q^4 + q^5 + 2q^6 - 2q^7 - 2q^9 - 2q^10 + q^11 ...
        let f = eta_product(&[(1, 2), (11, 2)], 12);
        let expect = [
            (1usize, 1i64), (2, -2), (3, -1), (4, 2), (5, 1), (6, 2), (7, -2), (8, 0), (9, -2), (10, -2), (11, 1),
        ];
        for (n, v) in expect {
            assert_eq!(f.c[n], rat(v), "n = {n}");
        }
    }

    #[test]
    fn eta_level15_weight2() {
        // eta(z) eta(3z) eta(5z) eta(15z) = q - q^2 - q^3 - q^4 + q^5 + q^6 + 3q^8 + q^9 ...
        let f = eta_product(&[(1, 1), (3, 1), (5, 1), (15, 1)], 12);
        let expect = [
            (1usize, 1i64), (2, -1), (3, -1), (4, -1), (5, 1), (6, 1), (7, 0), (8, 3), (9, 1), (10, -1), (11, -4),
        ];
        for (n, v) in expect {
            assert_eq!(f.c[n], rat(v), "n = {n}");
        }
    }

    #[test]
    fn theta_squares() {
        let t = theta(30);
        assert_eq!(t.c[0], rat(1));
        assert_eq!(t.c[1], rat(2));
        assert_eq!(t.c[4], rat(2));
        assert_eq!(t.c[9], rat(2));
        assert_eq!(t.c[25], rat(2));
        assert_eq!(t.c[2], rat(0));
        // theta^2 counts representations as sums of two squares
        let t2 = theta_pow(2, 30);
        assert_eq!(t2.c[1], rat(4));
        assert_eq!(t2.c[2], rat(4));
        assert_eq!(t2.c[3], rat(0));
        assert_eq!(t2.c[5], rat(8));
        assert_eq!(t2.c[25], rat(12));
    }

    #[test]
    fn binary_theta_disc_minus31() {
        // forms [1,1,8] and [2,1,4] of discriminant -31; their difference is
        // twice the dihedral weight-1 cusp form
        let t1 = binary_theta(1, 1, 8, 20);
        let t2 = binary_theta(2, 1, 4, 20);
        // representation counts: 1 = x^2+xy+8y^2 at (±1, 0): 2
        assert_eq!(t1.c[1], rat(2));
        assert_eq!(t2.c[2], rat(2));
        let u2 = t1.sub(&t2);
        // u = (t1 - t2)/2 is the weight-1 dihedral eigenform: hand counts give
        // u_1 = 1, u_2 = -1, u_5 = -1, and the weight-1 Hecke relation forces
        // u_4 = u_2^2 - chi(2) = 0 since 2 splits
        for (n, v) in [(1usize, 1i64), (2, -1), (3, 0), (4, 0), (5, -1)] {
            assert_eq!(u2.c[n], rat(2 * v), "n = {n}");
        }
        // multiplicativity at coprime indices on the computed range
        let u: Vec<_> = (0..20).map(|n| &u2.c[n] / rat(2)).collect();
        assert_eq!(u[10], &u[2] * &u[5]);
        assert_eq!(u[15], &u[3] * &u[5]);
        assert_eq!(u[6], &u[2] * &u[3]);
    }
}
