//! Classical dimension formulas for Gamma_0(N): genus, cusp counts, elliptic
//! point counts, and the cusp/full space dimensions used as span certificates.

use shimdec_core::arith::{divisors, euler_phi, factor, gamma0_index, gcd};
use shimdec_core::chars::kronecker_symbol;

pub fn nu_infinity(n: u64) -> u64 {
    divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d)).max(1)).sum()
}

pub fn nu2(n: u64) -> u64 {
    if n.is_multiple_of(4) {
        return 0;
    }
    let mut out = 1;
    for (p, _) in factor(n) {
        if p == 2 {
            continue;
        }
        out *= (1 + kronecker_symbol(-1, p as i64)) as u64;
    }
    out
}

pub fn nu3(n: u64) -> u64 {
    if n.is_multiple_of(9) {
        return 0;
    }
    let mut out = 1;
    for (p, _) in factor(n) {
        out *= match kronecker_symbol(-3, p as i64) {
            1 => 2,
            0 => 1,
            _ => 0,
        };
    }
    out
}

pub fn genus(n: u64) -> u64 {
    let mu = gamma0_index(n);
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
    let twelve_g = 12 + mu as i64 - 3 * nu2(n) as i64 - 4 * nu3(n) as i64 - 6 * nu_infinity(n) as i64;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "genus formula must be integral");
    (twelve_g / 12) as u64
}

/// dim S_k(Gamma_0(N)) for even k >= 2, trivial character.
pub fn dim_cusp(n: u64, k: u32) -> u64 {
    assert!(k >= 2 && k.is_multiple_of(2));
    let g = genus(n) as i64;
    if k == 2 {
        return g as u64;
    }
    let k = k as i64;
    let val = (k - 1) * (g - 1)
        + (k / 2 - 1) * nu_infinity(n) as i64
        + nu2(n) as i64 * (k / 4)
        + nu3(n) as i64 * (k / 3);
    assert!(val >= 0);
    val as u64
}

/// dim M_k(Gamma_0(N)) for even k >= 2, trivial character.
pub fn dim_full(n: u64, k: u32) -> u64 {
    let eis = if k == 2 { nu_infinity(n) - 1 } else { nu_infinity(n) };
    dim_cusp(n, k) + eis
}
