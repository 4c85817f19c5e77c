//! Integer utilities shared across the crate: gcd, factorization at desk
//! scale, divisor enumeration, the unit group of Z/n and discrete logs in it.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in ascending order, `p <= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = 2;
    while n <= bound {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Prime factorization as (p, exponent) pairs, ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pe = 1;
        for _ in 0..e {
            pe *= p;
            for d in &prev {
                out.push(d * pe);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Largest square-free t and m with n = t * m^2.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    let mut t = 1;
    let mut m = 1;
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            t *= p;
        }
        for _ in 0..e / 2 {
            m *= p;
        }
    }
    (t, m)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p - 1);
    }
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Index of Gamma_0(N) in the full modular group: N * prod_{p|N} (1 + 1/p).
pub fn gamma0_index(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p + 1);
    }
    out
}

/// Cyclic decomposition of (Z/nZ)^x as generator/order pairs.
///
/// Uses the classical splitting: odd prime powers are cyclic with a primitive
/// root, 2^a contributes <-1> x <5> for a >= 3.
pub struct UnitGroup {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
}

impl UnitGroup {
    pub fn new(n: u64) -> UnitGroup {
        assert!(n >= 1);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factor(n) {
            let pe = p.pow(e);
            if p == 2 {
                if e == 2 {
                    generators.push(crt_lift(pe - 1, pe, n));
                    orders.push(2);
                } else if e >= 3 {
                    generators.push(crt_lift(pe - 1, pe, n));
                    orders.push(2);
                    generators.push(crt_lift(5 % pe, pe, n));
                    orders.push(pe / 4);
                }
                // e == 1: trivial unit group mod 2
            } else {
                let g = primitive_root(p, e);
                generators.push(crt_lift(g, pe, n));
                orders.push(pe / p * (p - 1));
            }
        }
        UnitGroup { modulus: n, generators, orders }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent vector of a unit with respect to the stored generators.
    /// Brute-force discrete log, adequate for the moduli this crate meets.
    pub fn dlog(&self, a: u64) -> Option<Vec<u64>> {
        let a = a % self.modulus;
        if self.modulus == 1 {
            return Some(vec![]);
        }
        if gcd(a, self.modulus) != 1 {
            return None;
        }
        // walk the mixed-radix counter over all exponent tuples; each step
        // multiplies by one generator, and a wrap of digit j multiplies by
        // g_j^{orders[j]} = 1, so val tracks the product exactly
        let mut val = 1u64;
        let mut idx = vec![0u64; self.generators.len()];
        for _ in 0..self.order() {
            if val == a {
                return Some(idx);
            }
            let mut j = 0;
            loop {
                if j == self.generators.len() {
                    return None;
                }
                idx[j] += 1;
                val = val * self.generators[j] % self.modulus;
                if idx[j] < self.orders[j] {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
        None
    }
}

/// Lift r mod pe to a residue mod n that is 1 modulo the cofactor n/pe.
fn crt_lift(r: u64, pe: u64, n: u64) -> u64 {
    let q = n / pe;
    if q == 1 {
        return r % n;
    }
    // x = r mod pe, x = 1 mod q
    for k in 0..pe {
        let x = 1 + k * q;
        if x % pe == r % pe {
            return x % n;
        }
    }
    unreachable!("crt lift must exist for coprime moduli");
}

/// Primitive root modulo p^e for odd p.
fn primitive_root(p: u64, e: u32) -> u64 {
    let order_p = p - 1;
    let facs = factor(order_p);
    let mut g = 2;
    loop {
        if gcd(g, p) == 1 && facs.iter().all(|&(q, _)| pow_mod(g, order_p / q, p) != 1) {
            break;
        }
        g += 1;
    }
    if e == 1 {
        return g;
    }
    // ensure g is primitive mod p^2, then it is primitive mod all p^e
    let pe = p.pow(2);
    if pow_mod(g, p - 1, pe) == 1 {
        g += p;
    }
    g % p.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_divisors_roundtrip() {
        assert_eq!(factor(124), vec![(2, 2), (31, 1)]);
        assert_eq!(divisors(124), vec![1, 2, 4, 31, 62, 124]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn squarefree_split() {
        assert_eq!(squarefree_part(180), (5, 6));
        assert_eq!(squarefree_part(1), (1, 1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(45));
    }

    #[test]
    fn gamma0_indices() {
        assert_eq!(gamma0_index(124), 192);
        assert_eq!(gamma0_index(36), 72);
        assert_eq!(gamma0_index(4), 6);
        assert_eq!(gamma0_index(180), 432);
    }

    #[test]
    fn unit_group_orders() {
        for n in [1u64, 2, 3, 4, 8, 12, 36, 124, 180] {
            let g = UnitGroup::new(n);
            assert_eq!(g.order(), euler_phi(n).max(1), "n = {n}");
        }
    }

    #[test]
    fn unit_group_dlog_roundtrip() {
        let g = UnitGroup::new(36);
        for a in 1..36u64 {
            if gcd(a, 36) != 1 {
                assert!(g.dlog(a).is_none());
                continue;
            }
            let exps = g.dlog(a).expect("unit has a dlog");
            let mut val = 1u64;
            for (j, e) in exps.iter().enumerate() {
                val = val * pow_mod(g.generators[j], *e, 36) % 36;
            }
            assert_eq!(val, a);
        }
    }
}
