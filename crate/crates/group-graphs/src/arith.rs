//! Small integer helpers shared across the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorisation by trial division, as (prime, exponent) pairs in
/// ascending order. Adequate for group orders (well below 2^40 here).
pub fn factorise(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorise(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && factorise(n) == vec![(n, 1)]
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for (p, _) in factorise(n) {
        r = r / p * (p - 1);
    }
    r
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}
