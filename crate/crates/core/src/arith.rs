//! Small exact-integer helpers shared by the enumeration and local analysis code.

use alloc::vec::Vec;

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

/// Floor of the square root of a nonnegative `u128`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u128;
    // the float guess is within a few units; fix it up exactly
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn isqrt_u64(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

/// Smallest `s` with `s * s >= n`.
pub fn isqrt_ceil_u128(n: u128) -> u128 {
    let r = isqrt_u128(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Largest `r >= 0` with `r^4 <= n`.
pub fn iroot4_u128(n: u128) -> u128 {
    isqrt_u128(isqrt_u128(n))
}

pub fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if a % b < 0 {
        q - 1
    } else {
        q
    }
}

pub fn div_ceil(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if a % b > 0 {
        q + 1
    } else {
        q
    }
}

/// Mathematical residue in `0..m`.
pub fn rem_euclid_i128(n: i128, m: u64) -> u64 {
    n.rem_euclid(m as i128) as u64
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += step.next().unwrap();
    }
    true
}

/// All primes `<= limit` via a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Positive divisors of `n > 0`, unordered.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] * m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_edges() {
        for n in 0u128..2000 {
            let r = isqrt_u128(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
            let c = isqrt_ceil_u128(n);
            assert!(c * c >= n && (c == 0 || (c - 1) * (c - 1) < n));
        }
        let big = (1u128 << 100) - 1;
        let r = isqrt_u128(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
        assert_eq!(iroot4_u128(16 * 5000 / 27), 7);
        assert_eq!(iroot4_u128(81), 3);
        assert_eq!(iroot4_u128(80), 2);
    }

    #[test]
    fn floor_ceil_division() {
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_floor(7, 2), 3);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(6, 2), 3);
    }

    #[test]
    fn divisor_lists() {
        let mut d = divisors(36);
        d.sort_unstable();
        assert_eq!(d, [1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(1), [1]);
        let mut d = divisors(97 * 2);
        d.sort_unstable();
        assert_eq!(d, [1, 2, 97, 194]);
    }

    #[test]
    fn primality_matches_sieve() {
        let ps = primes_up_to(2000);
        for n in 0..=2000u64 {
            assert_eq!(is_prime_u64(n), ps.binary_search(&n).is_ok(), "{n}");
        }
    }
}
