//! Machine-integer number theory used throughout: gcd, modular powers,
//! primality, sieving, square roots mod p and trial factoring.

use alloc::vec;
use alloc::vec::Vec;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u128, p)
}

pub fn rem_euclid_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Legendre symbol (a/p) for odd prime p, as -1, 0 or 1.
pub fn legendre(a: i128, p: u64) -> i32 {
    let a = rem_euclid_i128(a, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, ((p - 1) / 2) as u128, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks. Returns some root of `a` mod odd prime `p`, if one exists.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if legendre(a as i128, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while legendre(z as i128, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q as u128, p);
    let mut t = pow_mod(a, q as u128, p);
    let mut r = pow_mod(a, q.div_ceil(2) as u128, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn val_p(mut n: i128, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Result of trial division up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Prime factors found below the bound, with multiplicity.
    pub factors: Vec<(u64, u32)>,
    /// Leftover cofactor (1 if fully factored). When it exceeds `bound²` its
    /// primality is checked but it is not split further.
    pub tail: u128,
    /// True if the tail is 1 or a certified prime.
    pub complete: bool,
}

impl Factorization {
    pub fn radical_known(&self) -> u128 {
        self.factors.iter().map(|&(p, _)| p as u128).product()
    }

    /// All primes found, including a prime tail.
    pub fn primes(&self) -> Vec<u128> {
        let mut out: Vec<u128> = self.factors.iter().map(|&(p, _)| p as u128).collect();
        if self.tail > 1 && self.complete {
            out.push(self.tail);
        }
        out
    }
}

pub fn trial_factor(n: u128, bound: u64) -> Factorization {
    let mut n = n;
    let mut factors = Vec::new();
    if n == 0 {
        return Factorization { factors, tail: 0, complete: false };
    }
    let mut p = 2u64;
    while p <= bound && (p as u128) * (p as u128) <= n {
        if n % p as u128 == 0 {
            let mut e = 0;
            while n % p as u128 == 0 {
                n /= p as u128;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let complete = if n == 1 {
        true
    } else if (p as u128) * (p as u128) > n {
        // no divisor below sqrt(n): tail is prime
        true
    } else {
        n <= u64::MAX as u128 && is_prime(n as u64)
    };
    if complete && n > 1 && n <= bound as u128 {
        factors.push((n as u64, 1));
        n = 1;
    }
    Factorization { factors, tail: n, complete }
}

pub fn radical(n: u128) -> u128 {
    let f = trial_factor(n, u64::MAX);
    f.radical_known() * f.tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn tonelli_shanks_roots() {
        for p in primes_up_to(500).into_iter().skip(1) {
            for a in 1..p {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert_eq!(legendre(a as i128, p), -1),
                }
            }
        }
    }

    #[test]
    fn trial_factoring() {
        let f = trial_factor(421 * 421 * 11, 100);
        assert_eq!(f.factors, vec![(11, 1)]);
        assert_eq!(f.tail, 421 * 421);
        assert!(!f.complete);
        let f = trial_factor(2 * 3 * 3 * 1_000_003, 10);
        assert_eq!(f.factors, vec![(2, 1), (3, 2)]);
        assert_eq!(f.tail, 1_000_003);
        assert!(f.complete);
        assert_eq!(radical(2 * 2 * 5 * 5 * 11), 110);
    }
}
